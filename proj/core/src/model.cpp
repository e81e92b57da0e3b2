#include "hpm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace hpm {

namespace {

std::vector<double> component(std::span<const Vec2> v, int c) {
  std::vector<double> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = c == 0 ? v[i].x : v[i].y;
  return out;
}

// Solve S x = rhs componentwise for a Vec2 right-hand side.
VectorField solve_vec(const SparseOperator& s, const GridSpec& grid,
                      std::span<const Vec2> rhs, const CgOptions& opt, long& iters) {
  VectorField out(grid);
  std::vector<double> b(rhs.size()), x(rhs.size(), 0.0);
  for (int c = 0; c < 2; ++c) {
    for (size_t k = 0; k < rhs.size(); ++k) b[k] = c == 0 ? rhs[k].x : rhs[k].y;
    std::fill(x.begin(), x.end(), 0.0);
    SolveReport rep = cg_solve(s, b, x, opt);
    iters += rep.iterations;
    for (size_t k = 0; k < rhs.size(); ++k) (c == 0 ? out[k].x : out[k].y) = x[k];
  }
  return out;
}

}  // namespace

Model::Model(const GridSpec& grid, const ModelSpec& spec)
    : grid_(grid), spec_(spec),
      mass_(assemble_mass(grid)),
      helm_(assemble_helmholtz(grid, spec.alpha)) {
  if (!std::isfinite(spec.alpha) || spec.alpha < 0.0)
    throw std::invalid_argument("Model: alpha must be finite and >= 0");
  if (spec.kind == ModelKind::SwAlpha && !(spec.g > 0.0))
    throw std::invalid_argument("Model: SW-alpha needs g > 0");
}

EulerianState Model::velocity_solve(const ParticleSet& p, const CgOptions& opt) const {
  require_same_grid(grid_, p.grid);
  EulerianState state(grid_);
  state.mu = scatter(std::span<const Vec2>(p.mbar), p);

  if (spec_.kind == ModelKind::EpDiff) {
    state.u = solve_vec(helm_, grid_, state.mu.mu, opt, state.cg_iterations);
    return state;
  }

  // SW-alpha: density first, then the weighted operator, then the velocity.
  SolveReport rep;
  ScalarField dt = scatter_avg(std::span<const double>(p.dbar), p, mass_, opt, &rep);
  state.cg_iterations += rep.iterations;
  state.b_op = assemble_weighted_helmholtz(grid_, spec_.alpha, dt);
  state.u = solve_vec(*state.b_op, grid_, state.mu.mu, opt, state.cg_iterations);

  // dL/dD_k = 1/2 u.(dB/dD_k)u - g (M <D>)_k, the exact derivative of the
  // assembled Lagrangian; its M-inverse drives the momentum forcing.
  std::vector<double> dl = kinetic_weight_gradient(grid_, spec_.alpha, state.u);
  std::vector<double> md(dt.size());
  mass_.apply(dt.v, md);
  for (int k = 0; k < dt.size(); ++k) dl[k] -= spec_.g * md[k];

  std::vector<double> w(dl.size(), 0.0);
  rep = cg_solve(mass_, dl, w, opt);
  state.cg_iterations += rep.iterations;

  state.dtilde = ScalarField(grid_, std::move(dt.v));
  state.dl_dweight = ScalarField(grid_, std::move(dl));
  state.force_potential = ScalarField(grid_, std::move(w));
  return state;
}

double Model::hamiltonian(const ParticleSet&, const EulerianState& state) const {
  double h = 0.0;
  for (int k = 0; k < state.u.size(); ++k) h += dot(state.mu.mu[k], state.u[k]);
  h *= 0.5;
  if (spec_.kind == ModelKind::SwAlpha) {
    const ScalarField& dt = *state.dtilde;
    std::vector<double> md(dt.size());
    mass_.apply(dt.v, md);
    double pot = 0.0;
    for (int k = 0; k < dt.size(); ++k) pot += dt[k] * md[k];
    h += 0.5 * spec_.g * pot;
  }
  return h;
}

double Model::hamiltonian(const ParticleSet& p, const CgOptions& opt) const {
  return hamiltonian(p, velocity_solve(p, opt));
}

void Model::particle_rhs(const ParticleSet& p, const EulerianState& state,
                         std::vector<Vec2>& xdot, std::vector<Vec2>& mdot) const {
  require_same_grid(grid_, p.grid);
  xdot = gather(state.u, p);
  auto jac = gather_grad(state.u, p);
  mdot.resize(p.size());
  for (int b = 0; b < p.size(); ++b) mdot[b] = -(jac[b] * p.mbar[b]);
  if (spec_.kind == ModelKind::SwAlpha) {
    auto gw = gather_grad(*state.force_potential, p);
    for (int b = 0; b < p.size(); ++b) mdot[b] += p.dbar[b] * gw[b];
  }
}

GridEpResiduals Model::grid_ep_rhs(const ParticleSet& p, const EulerianState& state,
                                   const CgOptions& opt) const {
  require_same_grid(grid_, p.grid);
  const int n = p.size();
  const int m = grid_.num_nodes();

  std::vector<Vec2> xdot, mdot;
  particle_rhs(p, state, xdot, mdot);

  // d/dt <mbar> by the product rule over psi_k(X_beta): the mdot scatter plus
  // the transport of the existing weights along Xdot.
  auto dmu = scatter(std::span<const Vec2>(mdot), p);
  std::vector<Vec2> flux(n);
  for (int c = 0; c < 2; ++c) {
    for (int b = 0; b < n; ++b)
      flux[b] = (c == 0 ? p.mbar[b].x : p.mbar[b].y) * xdot[b];
    auto transport = scatter_div_raw(std::span<const Vec2>(flux), p);
    for (int k = 0; k < m; ++k)
      (c == 0 ? dmu.mu[k].x : dmu.mu[k].y) -= transport.mu[k];
  }
  long iters = 0;
  VectorField ddt_m = solve_vec(mass_, grid_, dmu.mu, opt, iters);

  // <div([u] mbar)> componentwise, with [u] = Xdot.
  VectorField div_um(grid_);
  for (int c = 0; c < 2; ++c) {
    for (int b = 0; b < n; ++b)
      flux[b] = (c == 0 ? p.mbar[b].x : p.mbar[b].y) * xdot[b];
    ScalarField d = scatter_div(std::span<const Vec2>(flux), p, mass_, opt);
    for (int k = 0; k < m; ++k) (c == 0 ? div_um[k].x : div_um[k].y) = d[k];
  }

  // <[(grad u)^T] . mbar>
  auto jac = gather_grad(state.u, p);
  std::vector<Vec2> jm(n);
  for (int b = 0; b < n; ++b) jm[b] = jac[b] * p.mbar[b];
  SolveReport rep;
  VectorField stretch = scatter_avg(std::span<const Vec2>(jm), p, mass_, opt, &rep);

  GridEpResiduals res{VectorField(grid_), ScalarField(grid_)};
  for (int k = 0; k < m; ++k)
    res.momentum[k] = ddt_m[k] + div_um[k] + stretch[k];

  if (spec_.kind == ModelKind::SwAlpha) {
    auto gw = gather_grad(*state.force_potential, p);
    std::vector<Vec2> dg(n);
    for (int b = 0; b < n; ++b) dg[b] = p.dbar[b] * gw[b];
    VectorField force = scatter_avg(std::span<const Vec2>(dg), p, mass_, opt, &rep);
    for (int k = 0; k < m; ++k) res.momentum[k] -= force[k];
  }

  // Continuity: d/dt <Dbar> + <div(Dbar [u])>, Dbar constant in time.
  std::vector<Vec2> dflux(n);
  for (int b = 0; b < n; ++b) dflux[b] = p.dbar[b] * xdot[b];
  auto ddt_nu = scatter_div_raw(std::span<const Vec2>(dflux), p);
  for (int k = 0; k < m; ++k) ddt_nu.mu[k] = -ddt_nu.mu[k];
  std::vector<double> ddt_d(m, 0.0);
  rep = cg_solve(mass_, ddt_nu.mu, ddt_d, opt);
  ScalarField div_d = scatter_div(std::span<const Vec2>(dflux), p, mass_, opt);
  for (int k = 0; k < m; ++k) res.continuity[k] = ddt_d[k] + div_d[k];

  return res;
}

}  // namespace hpm
