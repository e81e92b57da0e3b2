#include "hpm/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace hpm {

DiagnosticsRecord record(const Model& model, const ParticleSet& p,
                         const EulerianState& state, double t, int fp_iterations,
                         long cg_iterations) {
  DiagnosticsRecord rec;
  rec.t = t;
  rec.hamiltonian = model.hamiltonian(p, state);
  for (int b = 0; b < p.size(); ++b) {
    rec.total_momentum += p.mbar[b];
    rec.total_mass += p.dbar[b];
  }
  auto nu = scatter(std::span<const double>(p.dbar), p);
  for (double v : nu.mu) rec.grid_mass += v;
  rec.fp_iterations = fp_iterations;
  rec.cg_iterations = cg_iterations;
  if (!std::isfinite(rec.hamiltonian) || !is_finite(rec.total_momentum) ||
      !std::isfinite(rec.grid_mass))
    throw std::runtime_error("diagnostics: non-finite record");
  return rec;
}

Theorem1Report check_theorem1(const Model& model, const ParticleSet& p,
                              const CgOptions& opt) {
  EulerianState state = model.velocity_solve(p, opt);
  GridEpResiduals res = model.grid_ep_rhs(p, state, opt);
  Theorem1Report rep;
  for (int k = 0; k < res.momentum.size(); ++k)
    rep.momentum_residual = std::max(rep.momentum_residual, max_abs(res.momentum[k]));
  for (int k = 0; k < res.continuity.size(); ++k)
    rep.continuity_residual =
        std::max(rep.continuity_residual, std::fabs(res.continuity[k]));
  return rep;
}

double check_gradients(const Model& model, const ParticleSet& p, double h) {
  const CgOptions tight{1e-12, 4000, true};
  const double ds = p.grid.cell_area();

  std::vector<Vec2> xdot, mdot;
  EulerianState state = model.velocity_solve(p, tight);
  model.particle_rhs(p, state, xdot, mdot);

  double xscale = 0.0, mscale = 0.0;
  for (int b = 0; b < p.size(); ++b) {
    xscale = std::max(xscale, max_abs(xdot[b]));
    mscale = std::max(mscale, max_abs(mdot[b]));
  }
  if (xscale == 0.0) xscale = 1.0;
  if (mscale == 0.0) mscale = 1.0;

  auto ham_at = [&](const ParticleSet& q) { return model.hamiltonian(q, tight); };

  double worst = 0.0;
  ParticleSet q = p;
  for (int b = 0; b < p.size(); ++b) {
    for (int c = 0; c < 2; ++c) {
      // Xdot = dH/d(mbar/dS): central difference in the momentum.
      double* mc = c == 0 ? &q.mbar[b].x : &q.mbar[b].y;
      double saved = *mc;
      *mc = saved + h;
      double hp = ham_at(q);
      *mc = saved - h;
      double hm = ham_at(q);
      *mc = saved;
      double fd = ds * (hp - hm) / (2.0 * h);
      double got = c == 0 ? xdot[b].x : xdot[b].y;
      worst = std::max(worst, std::fabs(fd - got) / xscale);

      // mdot = -dS dH/dX: central difference in the position.
      double* xc = c == 0 ? &q.x[b].x : &q.x[b].y;
      saved = *xc;
      *xc = saved + h;
      hp = ham_at(q);
      *xc = saved - h;
      hm = ham_at(q);
      *xc = saved;
      fd = -ds * (hp - hm) / (2.0 * h);
      got = c == 0 ? mdot[b].x : mdot[b].y;
      worst = std::max(worst, std::fabs(fd - got) / mscale);
    }
  }
  return worst;
}

namespace {

// One step in conjugate variables without the position wrap; the stencils
// accept slightly out-of-range coordinates, and the finite-difference
// Jacobian needs a continuous map.
void step_conjugate(const Model& model, const StepConfig& cfg, StepScheme scheme,
                    ParticleSet& p) {
  if (scheme == StepScheme::SymplecticEuler) {
    EulerianState converged(model.grid());
    auto result = fixed_point_momentum(model, p, cfg, nullptr, &converged);
    auto xdot = gather(converged.u, p);
    for (int b = 0; b < p.size(); ++b) p.x[b] += cfg.dt * xdot[b];
    p.mbar = std::move(result.first);
  } else {
    EulerianState state = model.velocity_solve(p, cfg.cg());
    std::vector<Vec2> xdot, mdot;
    model.particle_rhs(p, state, xdot, mdot);
    for (int b = 0; b < p.size(); ++b) {
      p.x[b] += cfg.dt * xdot[b];
      p.mbar[b] += cfg.dt * mdot[b];
    }
  }
}

}  // namespace

double check_symplectic(const Model& model, const ParticleSet& p, const StepConfig& cfg,
                        double h, StepScheme scheme) {
  const int n = p.size();
  const int dim = 4 * n;
  const double ds = p.grid.cell_area();

  StepConfig tight = cfg;
  tight.fp_tol = std::min(cfg.fp_tol, 1e-13);
  tight.cg_tol = std::min(cfg.cg_tol, 1e-13);
  tight.cg_max_iter = std::max(cfg.cg_max_iter, 4000);

  // Phase-space coordinates z = (X, mbar/dS) flattened; columns of the
  // Jacobian S by central differences.
  std::vector<std::vector<double>> s(dim, std::vector<double>(dim));
  auto pack = [&](const ParticleSet& q, std::vector<double>& z) {
    for (int b = 0; b < n; ++b) {
      z[2 * b] = q.x[b].x;
      z[2 * b + 1] = q.x[b].y;
      z[2 * n + 2 * b] = q.mbar[b].x / ds;
      z[2 * n + 2 * b + 1] = q.mbar[b].y / ds;
    }
  };
  auto perturbed = [&](int i, double delta) {
    ParticleSet q = p;
    if (i < 2 * n) {
      double* v = i % 2 == 0 ? &q.x[i / 2].x : &q.x[i / 2].y;
      *v += delta;
    } else {
      int j = i - 2 * n;
      double* v = j % 2 == 0 ? &q.mbar[j / 2].x : &q.mbar[j / 2].y;
      *v += delta * ds;
    }
    step_conjugate(model, tight, scheme, q);
    return q;
  };

  std::vector<double> zp(dim), zm(dim);
  for (int i = 0; i < dim; ++i) {
    ParticleSet qp = perturbed(i, h);
    ParticleSet qm = perturbed(i, -h);
    pack(qp, zp);
    pack(qm, zm);
    for (int r = 0; r < dim; ++r) s[r][i] = (zp[r] - zm[r]) / (2.0 * h);
  }

  // Omega in block form [[0, I], [-I, 0]]; deviation max over entries of
  // S^T Omega S - Omega.
  auto omega_entry = [&](int r, int c) -> double {
    if (r < 2 * n && c == r + 2 * n) return 1.0;
    if (r >= 2 * n && c == r - 2 * n) return -1.0;
    return 0.0;
  };
  double worst = 0.0;
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      double acc = 0.0;
      for (int k = 0; k < dim; ++k) {
        // (S^T Omega S)_rc = sum_k S_kr (Omega S)_kc
        double os = 0.0;
        if (k < 2 * n)
          os = s[k + 2 * n][c];
        else
          os = -s[k - 2 * n][c];
        acc += s[k][r] * os;
      }
      worst = std::max(worst, std::fabs(acc - omega_entry(r, c)));
    }
  }
  return worst;
}

}  // namespace hpm
