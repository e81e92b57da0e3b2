#pragma once

#include <span>
#include <vector>

#include "hpm/sparse.hpp"
#include "hpm/state.hpp"

namespace hpm {

/// Grid-to-particle map: [f]_beta = sum_k f_k psi_k(X_beta).
std::vector<double> gather(const ScalarField& f, const ParticleSet& p);
std::vector<Vec2> gather(const VectorField& f, const ParticleSet& p);

/// Grid-to-particle gradient map: [grad f]_beta = sum_k f_k grad psi_k(X_beta).
/// For vector fields the result is the 2x2 Jacobian with J(r,c) = d_r u_c
/// (rows indexed by gradient direction).
std::vector<Vec2> gather_grad(const ScalarField& f, const ParticleSet& p);
std::vector<Mat2> gather_grad(const VectorField& f, const ParticleSet& p);

/// Raw one-form scatter mu_k = sum_beta (fbar_beta / dS) psi_k(X_beta).
OneFormScatter<double> scatter(std::span<const double> fbar, const ParticleSet& p);
OneFormScatter<Vec2> scatter(std::span<const Vec2> fbar, const ParticleSet& p);

/// Raw divergence scatter: the M-weighted particle-to-grid divergence,
/// out_k = -sum_beta (fbar_beta / dS) . grad psi_k(X_beta).
OneFormScatter<double> scatter_div_raw(std::span<const Vec2> fbar, const ParticleSet& p);

/// Particle-to-grid map <fbar>: solves M <fbar> = scatter(fbar) componentwise.
ScalarField scatter_avg(std::span<const double> fbar, const ParticleSet& p,
                        const SparseOperator& mass, const CgOptions& opt = {},
                        SolveReport* report = nullptr);
VectorField scatter_avg(std::span<const Vec2> fbar, const ParticleSet& p,
                        const SparseOperator& mass, const CgOptions& opt = {},
                        SolveReport* report = nullptr);

/// Interpolated product <fbar [g]>: M <fbar [g]> = sum (fbar/dS) [g]_beta psi_k.
ScalarField scatter_product(std::span<const double> fbar, const ScalarField& g,
                            const ParticleSet& p, const SparseOperator& mass,
                            const CgOptions& opt = {}, SolveReport* report = nullptr);

/// Particle-to-grid divergence <div fbar>: M <div fbar> = -sum (fbar/dS).grad psi_k.
/// Adjoint to the grid-to-particle gradient map.
ScalarField scatter_div(std::span<const Vec2> fbar, const ParticleSet& p,
                        const SparseOperator& mass, const CgOptions& opt = {},
                        SolveReport* report = nullptr);

}  // namespace hpm
