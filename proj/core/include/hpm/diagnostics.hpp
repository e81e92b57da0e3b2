#pragma once

#include "hpm/integrator.hpp"
#include "hpm/model.hpp"

namespace hpm {

struct DiagnosticsRecord {
  double t = 0.0;
  double hamiltonian = 0.0;
  Vec2 total_momentum;   // sum_beta mbar_beta
  double total_mass = 0.0;  // sum_beta Dbar_beta, constant across a run
  double grid_mass = 0.0;   // sum_k scatter(Dbar)_k = total_mass / dS
  int fp_iterations = 0;
  long cg_iterations = 0;
};

DiagnosticsRecord record(const Model& model, const ParticleSet& p,
                         const EulerianState& state, double t, int fp_iterations = 0,
                         long cg_iterations = 0);

struct Theorem1Report {
  double momentum_residual = 0.0;   // max norm over nodes
  double continuity_residual = 0.0;
};

/// Max norms of the grid-form Euler-Poincare residuals; they vanish up to
/// solver tolerance for any state.
Theorem1Report check_theorem1(const Model& model, const ParticleSet& p,
                              const CgOptions& opt = {1e-12, 2000, true});

/// Compares particle_rhs against central differences of the Hamiltonian in
/// all phase-space directions (conjugate pair X_beta, mbar_beta/dS). Returns
/// the max error relative to the largest tendency. Intended for small
/// systems.
double check_gradients(const Model& model, const ParticleSet& p, double h = 1e-6);

enum class StepScheme {
  SymplecticEuler,
  ExplicitEuler,  // non-symplectic reference, comparison only
};

/// Deviation ||S^T Omega S - Omega||_max of the one-step Jacobian computed
/// by central differences in the conjugate variables.
double check_symplectic(const Model& model, const ParticleSet& p, const StepConfig& cfg,
                        double h = 1e-5, StepScheme scheme = StepScheme::SymplecticEuler);

}  // namespace hpm
