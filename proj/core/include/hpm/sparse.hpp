#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hpm {

struct SolveReport {
  int iterations = 0;
  double relative_residual = 0.0;  // ||S x - b|| / ||b||
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SolveReport rep)
      : std::runtime_error(what), report(rep) {}
  SolveReport report;
};

/// Symmetric sparse matrix in compressed-row storage with sorted column
/// indices per row. Immutable after assembly apart from value refills
/// through coeff_ref (assembly keeps the pattern fixed).
class SparseOperator {
 public:
  SparseOperator() = default;

  /// Build from a fixed pattern: rows[i] must be the sorted column indices
  /// of row i. Values start at zero.
  SparseOperator(int n, const std::vector<std::vector<int>>& rows);

  int size() const { return n_; }
  int nnz() const { return static_cast<int>(val_.size()); }

  /// y = S x.
  void apply(std::span<const double> x, std::span<double> y) const;

  /// Reference to the stored value at (r, c); throws if (r, c) is not in
  /// the pattern.
  double& coeff_ref(int r, int c);
  /// Value at (r, c), zero if outside the pattern.
  double coeff(int r, int c) const;

  void set_zero();
  std::span<const double> values() const { return val_; }
  std::span<const int> row_ptr() const { return row_ptr_; }
  std::span<const int> cols() const { return col_; }

  /// Max |S_ij - S_ji| over the pattern.
  double symmetry_defect() const;
  std::vector<double> diagonal() const;

 private:
  int n_ = 0;
  std::vector<int> row_ptr_;
  std::vector<int> col_;
  std::vector<double> val_;
};

struct CgOptions {
  double tol = 1e-9;   // relative residual target
  int max_iter = 500;
  bool jacobi = true;  // diagonal preconditioning
};

/// Preconditioned conjugate gradients for symmetric positive-definite S.
/// x holds the initial guess on entry (warm start) and the solution on exit.
/// Throws SolverError carrying the report if max_iter is reached without
/// meeting the tolerance. Deterministic for identical inputs.
SolveReport cg_solve(const SparseOperator& s, std::span<const double> b,
                     std::span<double> x, const CgOptions& opt = {});

}  // namespace hpm
