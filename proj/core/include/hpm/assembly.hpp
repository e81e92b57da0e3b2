#pragma once

#include "hpm/sparse.hpp"
#include "hpm/state.hpp"

namespace hpm {

/// Mass matrix M_ij = integral N_i N_j over the periodic grid, assembled
/// element by element with 2x2 Gauss quadrature (exact at this order).
/// 9 nonzeros per row; row sums equal the cell measure dS.
SparseOperator assemble_mass(const GridSpec& grid);

/// Modified Helmholtz matrix A_ij = integral N_i N_j + alpha^2 grad N_i . grad N_j.
/// alpha = 0 reproduces the mass matrix entrywise.
SparseOperator assemble_helmholtz(const GridSpec& grid, double alpha);

/// Density-weighted Helmholtz matrix
/// B_ij = integral (sum_k D_k N_k) (N_i N_j + alpha^2 grad N_i . grad N_j),
/// linear in the nodal weights D. Throws if any node weight is non-positive
/// (positive definiteness is only guaranteed for D > 0).
SparseOperator assemble_weighted_helmholtz(const GridSpec& grid, double alpha,
                                           const ScalarField& weight);

/// Nodal derivative of the kinetic energy with respect to the weight:
/// out_k = 1/2 u . (dB/dD_k) u, evaluated with the same quadrature as the
/// assembly so that it is the exact derivative of 1/2 u.B(D)u.
std::vector<double> kinetic_weight_gradient(const GridSpec& grid, double alpha,
                                            const VectorField& u);

}  // namespace hpm
