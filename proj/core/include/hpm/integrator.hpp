#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hpm/model.hpp"

namespace hpm {

struct StepConfig {
  double dt = 0.0204;
  double fp_tol = 1e-9;    // max-norm tolerance on momentum increments
  int fp_max_iter = 50;
  double cg_tol = 1e-9;
  int cg_max_iter = 500;

  CgOptions cg() const { return {cg_tol, cg_max_iter, true}; }
};

struct StepReport {
  int fp_iterations = 0;
  std::vector<double> increment_norms;  // one entry per sweep
  long cg_iterations = 0;
};

class FixedPointError : public std::runtime_error {
 public:
  FixedPointError(const std::string& what, StepReport rep)
      : std::runtime_error(what), report(std::move(rep)) {}
  StepReport report;
};

class DegenerateStepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves the implicit momentum update of the symplectic-Euler step by fixed
/// point iteration: each sweep rebuilds the grid fields from the current
/// iterate (positions frozen at X^n) and solves one 2x2 system per particle.
/// The iteration starts from the incoming momentum. On return *final_state,
/// when given, holds the fields of the converged momentum at X^n.
std::pair<std::vector<Vec2>, StepReport> fixed_point_momentum(
    const Model& model, const ParticleSet& p, const StepConfig& cfg,
    const EulerianState* initial_state = nullptr, EulerianState* final_state = nullptr);

/// One first-order symplectic-Euler step: momentum implicit, position
/// explicit, all grid fields evaluated at the pre-step positions. On entry
/// state must hold the fields of (X^n, mbar^n): on exit it holds the fields
/// of (X^{n+1}, mbar^{n+1}), ready for diagnostics and the next step's first
/// sweep.
StepReport symplectic_euler_step(const Model& model, ParticleSet& p,
                                 const StepConfig& cfg, EulerianState& state);

/// Convenience overload that builds the entry state itself.
StepReport symplectic_euler_step(const Model& model, ParticleSet& p,
                                 const StepConfig& cfg);

using Observer = std::function<void(int step, double t, const ParticleSet& p,
                                    const EulerianState& state, const StepReport& rep)>;

/// Applies n_steps steps, invoking the observer after each one. Step errors
/// abort the run with the failing step index in the message.
ParticleSet run(const Model& model, ParticleSet p0, const StepConfig& cfg, int n_steps,
                const Observer& observer = {});

}  // namespace hpm
