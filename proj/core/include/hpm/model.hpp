#pragma once

#include <optional>
#include <vector>

#include "hpm/assembly.hpp"
#include "hpm/calculus.hpp"
#include "hpm/sparse.hpp"
#include "hpm/state.hpp"

namespace hpm {

enum class ModelKind {
  EpDiff,   // geodesic H^1 flow; velocity from the modified Helmholtz solve
  SwAlpha,  // shallow-water-alpha with gravity and advected density
};

struct ModelSpec {
  ModelKind kind = ModelKind::EpDiff;
  double alpha = 0.3133;
  double g = 1.0;  // gravity, SW-alpha only
};

/// Grid fields derived from one particle configuration, all evaluated with
/// the positions frozen: the raw momentum scatter mu, the velocity u from
/// the Legendre solve, and (SW-alpha) the density, the weight derivative of
/// the Lagrangian and its mass-inverted form used by the momentum forcing.
struct EulerianState {
  OneFormScatter<Vec2> mu;
  VectorField u;
  std::optional<ScalarField> dtilde;           // <Dbar>
  std::optional<ScalarField> dl_dweight;       // dL/dD_k
  std::optional<ScalarField> force_potential;  // M^-1 dL/dD
  std::optional<SparseOperator> b_op;          // B(<Dbar>)
  long cg_iterations = 0;

  explicit EulerianState(const GridSpec& g) : mu(g), u(g) {}
};

struct GridEpResiduals {
  VectorField momentum;   // d/dt<m> + <div([u] m)> + <[(grad u)^T].m> - <D [grad M^-1 dL/dD]>
  ScalarField continuity; // d/dt<D> + <div(D [u])>
};

/// Model-specific Hamiltonian machinery over an assembled operator set.
/// The velocity solve consumes the raw scatter: A u = mu (EP-Diff) or
/// B(<Dbar>) u = mu (SW-alpha), which is the Legendre relation.
class Model {
 public:
  Model(const GridSpec& grid, const ModelSpec& spec);

  const GridSpec& grid() const { return grid_; }
  const ModelSpec& spec() const { return spec_; }
  const SparseOperator& mass() const { return mass_; }
  /// A = M + alpha^2 K (also B at unit weight).
  const SparseOperator& helmholtz() const { return helm_; }

  /// Scatters the particle momentum (and density for SW-alpha) and solves
  /// for the grid velocity. Throws SolverError on CG failure.
  EulerianState velocity_solve(const ParticleSet& p, const CgOptions& opt = {}) const;

  /// EP-Diff: H = 1/2 mu . u. SW-alpha adds 1/2 g <D> . M <D>.
  double hamiltonian(const ParticleSet& p, const EulerianState& state) const;
  double hamiltonian(const ParticleSet& p, const CgOptions& opt = {}) const;

  /// Canonical right-hand sides: Xdot_beta = [u]_beta and
  /// mdot_beta = -[(grad u)^T]_beta . mbar_beta (+ Dbar [grad M^-1 dL/dD] for
  /// SW-alpha).
  void particle_rhs(const ParticleSet& p, const EulerianState& state,
                    std::vector<Vec2>& xdot, std::vector<Vec2>& mdot) const;

  /// Grid-form Euler-Poincare combinations; identically zero up to solver
  /// tolerance. Verification only.
  GridEpResiduals grid_ep_rhs(const ParticleSet& p, const EulerianState& state,
                              const CgOptions& opt = {}) const;

 private:
  GridSpec grid_;
  ModelSpec spec_;
  SparseOperator mass_;
  SparseOperator helm_;
};

}  // namespace hpm
