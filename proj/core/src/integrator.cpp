#include "hpm/integrator.hpp"

#include <cmath>
#include <string>

namespace hpm {

namespace {

// Per-particle solve of (I + dt J) m_new = rhs with J the gathered velocity
// Jacobian at the particle.
Vec2 solve_local(const Mat2& jac, double dt, Vec2 rhs) {
  double a11 = 1.0 + dt * jac(0, 0);
  double a12 = dt * jac(0, 1);
  double a21 = dt * jac(1, 0);
  double a22 = 1.0 + dt * jac(1, 1);
  double d = a11 * a22 - a12 * a21;
  if (std::fabs(d) < 1e-14)
    throw DegenerateStepError("fixed_point_momentum: singular per-particle system");
  return {(a22 * rhs.x - a12 * rhs.y) / d, (-a21 * rhs.x + a11 * rhs.y) / d};
}

}  // namespace

std::pair<std::vector<Vec2>, StepReport> fixed_point_momentum(
    const Model& model, const ParticleSet& p, const StepConfig& cfg,
    const EulerianState* initial_state, EulerianState* final_state) {
  if (!(cfg.dt >= 0.0) || !(cfg.fp_tol > 0.0) || cfg.fp_max_iter < 1)
    throw std::invalid_argument("StepConfig: need dt >= 0, fp_tol > 0, fp_max_iter >= 1");
  const int n = p.size();
  StepReport rep;

  ParticleSet iterate = p;  // positions stay at X^n; mbar holds the iterate
  EulerianState state = initial_state ? *initial_state
                                      : model.velocity_solve(p, cfg.cg());
  if (!initial_state) rep.cg_iterations += state.cg_iterations;

  const bool swalpha = model.spec().kind == ModelKind::SwAlpha;
  std::vector<Vec2> mnew(n);

  while (true) {
    auto jac = gather_grad(state.u, iterate);
    std::vector<Vec2> force;
    if (swalpha) {
      auto gw = gather_grad(*state.force_potential, iterate);
      force.resize(n);
      for (int b = 0; b < n; ++b) force[b] = p.dbar[b] * gw[b];
    }
    double inc = 0.0;
    for (int b = 0; b < n; ++b) {
      Vec2 rhs = p.mbar[b];
      if (swalpha) rhs += cfg.dt * force[b];
      mnew[b] = solve_local(jac[b], cfg.dt, rhs);
      inc = std::max(inc, max_abs(mnew[b] - iterate.mbar[b]));
    }
    rep.fp_iterations += 1;
    rep.increment_norms.push_back(inc);
    iterate.mbar = mnew;

    // Field of the new iterate: next sweep's input, and on convergence the
    // field consumed by the position update.
    state = model.velocity_solve(iterate, cfg.cg());
    rep.cg_iterations += state.cg_iterations;

    if (inc <= cfg.fp_tol) break;
    if (rep.fp_iterations >= cfg.fp_max_iter)
      throw FixedPointError("fixed_point_momentum: no convergence in " +
                                std::to_string(cfg.fp_max_iter) + " sweeps",
                            rep);
  }
  if (final_state) *final_state = std::move(state);
  return {std::move(mnew), std::move(rep)};
}

StepReport symplectic_euler_step(const Model& model, ParticleSet& p,
                                 const StepConfig& cfg, EulerianState& state) {
  EulerianState converged(model.grid());
  auto [mnew, rep] = fixed_point_momentum(model, p, cfg, &state, &converged);

  // X^{n+1} = X^n + dt [u(mbar^{n+1})]^n, then wrapped.
  auto xdot = gather(converged.u, p);
  for (int b = 0; b < p.size(); ++b)
    p.x[b] = p.grid.wrap(p.x[b] + cfg.dt * xdot[b]);
  p.mbar = std::move(mnew);

  state = model.velocity_solve(p, cfg.cg());
  rep.cg_iterations += state.cg_iterations;
  return rep;
}

StepReport symplectic_euler_step(const Model& model, ParticleSet& p,
                                 const StepConfig& cfg) {
  EulerianState state = model.velocity_solve(p, cfg.cg());
  return symplectic_euler_step(model, p, cfg, state);
}

ParticleSet run(const Model& model, ParticleSet p0, const StepConfig& cfg, int n_steps,
                const Observer& observer) {
  EulerianState state = model.velocity_solve(p0, cfg.cg());
  for (int step = 1; step <= n_steps; ++step) {
    StepReport rep;
    auto at_step = [step](const std::string& what) {
      return "step " + std::to_string(step) + ": " + what;
    };
    try {
      rep = symplectic_euler_step(model, p0, cfg, state);
    } catch (const SolverError& e) {
      throw SolverError(at_step(e.what()), e.report);
    } catch (const FixedPointError& e) {
      throw FixedPointError(at_step(e.what()), e.report);
    } catch (const DegenerateStepError& e) {
      throw DegenerateStepError(at_step(e.what()));
    }
    if (observer) observer(step, step * cfg.dt, p0, state, rep);
  }
  return p0;
}

}  // namespace hpm
