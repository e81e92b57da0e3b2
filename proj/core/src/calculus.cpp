#include "hpm/calculus.hpp"

#include <stdexcept>

namespace hpm {

namespace {

void check_sizes(const ParticleSet& p, size_t n) {
  if (n != static_cast<size_t>(p.size()))
    throw std::invalid_argument("per-particle array length does not match particle count");
}

// Componentwise mass solve of a raw scatter; zero initial guess.
std::vector<double> mass_solve(const SparseOperator& mass, std::span<const double> rhs,
                               const CgOptions& opt, SolveReport* report) {
  std::vector<double> x(rhs.size(), 0.0);
  SolveReport rep = cg_solve(mass, rhs, x, opt);
  if (report) *report = rep;
  return x;
}

}  // namespace

ParticleSet::ParticleSet(const GridSpec& g, std::vector<Vec2> pos, std::vector<Vec2> mom,
                         std::vector<double> mass)
    : grid(g), x(std::move(pos)), mbar(std::move(mom)), dbar(std::move(mass)) {
  validate();
}

void ParticleSet::validate() const {
  if (x.empty()) throw std::invalid_argument("ParticleSet: need at least one particle");
  if (mbar.size() != x.size() || dbar.size() != x.size())
    throw std::invalid_argument("ParticleSet: array lengths disagree");
  for (size_t b = 0; b < x.size(); ++b) {
    if (!is_finite(x[b]) || !is_finite(mbar[b]) || !std::isfinite(dbar[b]))
      throw std::invalid_argument("ParticleSet: non-finite entry");
    if (x[b].x < 0.0 || x[b].x >= grid.lx() || x[b].y < 0.0 || x[b].y >= grid.ly())
      throw std::invalid_argument("ParticleSet: positions must be wrapped");
    if (!(dbar[b] > 0.0)) throw std::invalid_argument("ParticleSet: Dbar must be positive");
  }
}

std::vector<double> gather(const ScalarField& f, const ParticleSet& p) {
  require_same_grid(f.grid, p.grid);
  std::vector<double> out(p.size());
  for (int b = 0; b < p.size(); ++b) {
    PsiStencil st = make_psi_stencil(p.grid, p.x[b]);
    double acc = 0.0;
    for (int s = 0; s < 16; ++s) acc += st.w[s] * f[st.node[s]];
    out[b] = acc;
  }
  return out;
}

std::vector<Vec2> gather(const VectorField& f, const ParticleSet& p) {
  require_same_grid(f.grid, p.grid);
  std::vector<Vec2> out(p.size());
  for (int b = 0; b < p.size(); ++b) {
    PsiStencil st = make_psi_stencil(p.grid, p.x[b]);
    Vec2 acc{};
    for (int s = 0; s < 16; ++s) acc += st.w[s] * f[st.node[s]];
    out[b] = acc;
  }
  return out;
}

std::vector<Vec2> gather_grad(const ScalarField& f, const ParticleSet& p) {
  require_same_grid(f.grid, p.grid);
  std::vector<Vec2> out(p.size());
  for (int b = 0; b < p.size(); ++b) {
    PsiStencil st = make_psi_stencil(p.grid, p.x[b]);
    Vec2 acc{};
    for (int s = 0; s < 16; ++s) acc += f[st.node[s]] * st.grad[s];
    out[b] = acc;
  }
  return out;
}

std::vector<Mat2> gather_grad(const VectorField& f, const ParticleSet& p) {
  require_same_grid(f.grid, p.grid);
  std::vector<Mat2> out(p.size());
  for (int b = 0; b < p.size(); ++b) {
    PsiStencil st = make_psi_stencil(p.grid, p.x[b]);
    Mat2 acc;
    for (int s = 0; s < 16; ++s) {
      Vec2 fv = f[st.node[s]];
      Vec2 gr = st.grad[s];
      acc(0, 0) += gr.x * fv.x;
      acc(0, 1) += gr.x * fv.y;
      acc(1, 0) += gr.y * fv.x;
      acc(1, 1) += gr.y * fv.y;
    }
    out[b] = acc;
  }
  return out;
}

OneFormScatter<double> scatter(std::span<const double> fbar, const ParticleSet& p) {
  check_sizes(p, fbar.size());
  OneFormScatter<double> out(p.grid);
  const double inv_ds = 1.0 / p.grid.cell_area();
  for (int b = 0; b < p.size(); ++b) {
    PsiStencil st = make_psi_stencil(p.grid, p.x[b]);
    double w = fbar[b] * inv_ds;
    for (int s = 0; s < 16; ++s) out.mu[st.node[s]] += w * st.w[s];
  }
  return out;
}

OneFormScatter<Vec2> scatter(std::span<const Vec2> fbar, const ParticleSet& p) {
  check_sizes(p, fbar.size());
  OneFormScatter<Vec2> out(p.grid);
  const double inv_ds = 1.0 / p.grid.cell_area();
  for (int b = 0; b < p.size(); ++b) {
    PsiStencil st = make_psi_stencil(p.grid, p.x[b]);
    Vec2 w = inv_ds * fbar[b];
    for (int s = 0; s < 16; ++s) out.mu[st.node[s]] += st.w[s] * w;
  }
  return out;
}

OneFormScatter<double> scatter_div_raw(std::span<const Vec2> fbar, const ParticleSet& p) {
  check_sizes(p, fbar.size());
  OneFormScatter<double> out(p.grid);
  const double inv_ds = 1.0 / p.grid.cell_area();
  for (int b = 0; b < p.size(); ++b) {
    PsiStencil st = make_psi_stencil(p.grid, p.x[b]);
    Vec2 w = inv_ds * fbar[b];
    for (int s = 0; s < 16; ++s) out.mu[st.node[s]] -= dot(w, st.grad[s]);
  }
  return out;
}

ScalarField scatter_avg(std::span<const double> fbar, const ParticleSet& p,
                        const SparseOperator& mass, const CgOptions& opt,
                        SolveReport* report) {
  auto mu = scatter(fbar, p);
  return ScalarField(p.grid, mass_solve(mass, mu.mu, opt, report));
}

VectorField scatter_avg(std::span<const Vec2> fbar, const ParticleSet& p,
                        const SparseOperator& mass, const CgOptions& opt,
                        SolveReport* report) {
  auto mu = scatter(fbar, p);
  const int m = mu.size();
  std::vector<double> rhs(m);
  VectorField out(p.grid);
  SolveReport total{};
  for (int c = 0; c < 2; ++c) {
    for (int k = 0; k < m; ++k) rhs[k] = c == 0 ? mu.mu[k].x : mu.mu[k].y;
    SolveReport rep;
    auto sol = mass_solve(mass, rhs, opt, &rep);
    for (int k = 0; k < m; ++k) (c == 0 ? out[k].x : out[k].y) = sol[k];
    total.iterations += rep.iterations;
    total.relative_residual = std::max(total.relative_residual, rep.relative_residual);
  }
  if (report) *report = total;
  return out;
}

ScalarField scatter_product(std::span<const double> fbar, const ScalarField& g,
                            const ParticleSet& p, const SparseOperator& mass,
                            const CgOptions& opt, SolveReport* report) {
  check_sizes(p, fbar.size());
  auto gb = gather(g, p);
  std::vector<double> weighted(p.size());
  for (int b = 0; b < p.size(); ++b) weighted[b] = fbar[b] * gb[b];
  return scatter_avg(weighted, p, mass, opt, report);
}

ScalarField scatter_div(std::span<const Vec2> fbar, const ParticleSet& p,
                        const SparseOperator& mass, const CgOptions& opt,
                        SolveReport* report) {
  auto raw = scatter_div_raw(fbar, p);
  return ScalarField(p.grid, mass_solve(mass, raw.mu, opt, report));
}

}  // namespace hpm
