#include "hpm/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace hpm {

SparseOperator::SparseOperator(int n, const std::vector<std::vector<int>>& rows)
    : n_(n) {
  if (static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("SparseOperator: pattern row count mismatch");
  row_ptr_.resize(n + 1, 0);
  for (int i = 0; i < n; ++i) row_ptr_[i + 1] = row_ptr_[i] + static_cast<int>(rows[i].size());
  col_.reserve(row_ptr_[n]);
  for (int i = 0; i < n; ++i) {
    if (!std::is_sorted(rows[i].begin(), rows[i].end()))
      throw std::invalid_argument("SparseOperator: row columns must be sorted");
    col_.insert(col_.end(), rows[i].begin(), rows[i].end());
  }
  val_.assign(col_.size(), 0.0);
}

void SparseOperator::apply(std::span<const double> x, std::span<double> y) const {
  for (int i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) acc += val_[p] * x[col_[p]];
    y[i] = acc;
  }
}

double& SparseOperator::coeff_ref(int r, int c) {
  auto first = col_.begin() + row_ptr_[r];
  auto last = col_.begin() + row_ptr_[r + 1];
  auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c)
    throw std::out_of_range("SparseOperator: entry outside the assembled pattern");
  return val_[it - col_.begin()];
}

double SparseOperator::coeff(int r, int c) const {
  auto first = col_.begin() + row_ptr_[r];
  auto last = col_.begin() + row_ptr_[r + 1];
  auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return val_[it - col_.begin()];
}

void SparseOperator::set_zero() { std::fill(val_.begin(), val_.end(), 0.0); }

double SparseOperator::symmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      worst = std::max(worst, std::fabs(val_[p] - coeff(col_[p], i)));
  return worst;
}

std::vector<double> SparseOperator::diagonal() const {
  std::vector<double> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = coeff(i, i);
  return d;
}

SolveReport cg_solve(const SparseOperator& s, std::span<const double> b,
                     std::span<double> x, const CgOptions& opt) {
  const int n = s.size();
  if (static_cast<int>(b.size()) != n || static_cast<int>(x.size()) != n)
    throw std::invalid_argument("cg_solve: size mismatch");
  if (opt.tol <= 0.0) throw std::invalid_argument("cg_solve: tol must be positive");

  double norm_b = 0.0;
  for (double v : b) norm_b += v * v;
  norm_b = std::sqrt(norm_b);
  if (norm_b == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }

  std::vector<double> dinv;
  if (opt.jacobi) {
    dinv = s.diagonal();
    for (double& d : dinv) d = 1.0 / d;
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  s.apply(x, r);
  for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];

  auto precond = [&](const std::vector<double>& in, std::vector<double>& out) {
    if (opt.jacobi)
      for (int i = 0; i < n; ++i) out[i] = dinv[i] * in[i];
    else
      out = in;
  };

  precond(r, z);
  p = z;
  double rho = 0.0, rnorm = 0.0;
  for (int i = 0; i < n; ++i) {
    rho += r[i] * z[i];
    rnorm += r[i] * r[i];
  }
  rnorm = std::sqrt(rnorm);

  const double target = opt.tol * norm_b;
  int it = 0;
  while (rnorm > target) {
    if (it >= opt.max_iter)
      throw SolverError("cg_solve: max iterations reached", {it, rnorm / norm_b});
    s.apply(p, q);
    double pq = 0.0;
    for (int i = 0; i < n; ++i) pq += p[i] * q[i];
    double alpha = rho / pq;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    precond(r, z);
    double rho_next = 0.0;
    rnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      rho_next += r[i] * z[i];
      rnorm += r[i] * r[i];
    }
    rnorm = std::sqrt(rnorm);
    double beta = rho_next / rho;
    rho = rho_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    ++it;
  }
  return {it, rnorm / norm_b};
}

}  // namespace hpm
