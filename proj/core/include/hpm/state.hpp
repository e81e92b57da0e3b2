#pragma once

#include <stdexcept>
#include <vector>

#include "hpm/grid.hpp"
#include "hpm/vec.hpp"

namespace hpm {

/// Nodal values on a GridSpec, node-ordered (k = j*nx + i).
/// T is double (scalar field) or Vec2 (2-vector field).
template <class T>
struct GridField {
  GridSpec grid;
  std::vector<T> v;

  explicit GridField(const GridSpec& g) : grid(g), v(g.num_nodes()) {}
  GridField(const GridSpec& g, std::vector<T> values) : grid(g), v(std::move(values)) {
    if (static_cast<int>(v.size()) != g.num_nodes())
      throw std::invalid_argument("GridField: value count does not match grid");
  }

  T& operator[](int k) { return v[k]; }
  const T& operator[](int k) const { return v[k]; }
  int size() const { return static_cast<int>(v.size()); }
};

using ScalarField = GridField<double>;
using VectorField = GridField<Vec2>;

/// Raw particle-to-grid scatter mu_k = sum_beta (fbar_beta / dS) psi_k(X_beta),
/// before any mass-matrix solve. Summing mu over k returns sum fbar/dS exactly
/// (up to floating-point summation) by partition of unity.
template <class T>
struct OneFormScatter {
  GridSpec grid;
  std::vector<T> mu;

  explicit OneFormScatter(const GridSpec& g) : grid(g), mu(g.num_nodes()) {}
  int size() const { return static_cast<int>(mu.size()); }
};

/// Lagrangian state: wrapped positions X, momentum densities mbar, and
/// constant mass weights Dbar (never mutated by the dynamics).
struct ParticleSet {
  GridSpec grid;
  std::vector<Vec2> x;
  std::vector<Vec2> mbar;
  std::vector<double> dbar;

  explicit ParticleSet(const GridSpec& g) : grid(g) {}
  ParticleSet(const GridSpec& g, std::vector<Vec2> pos, std::vector<Vec2> mom,
              std::vector<double> mass);

  int size() const { return static_cast<int>(x.size()); }
  void validate() const;
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!a.same_layout(b))
    throw std::invalid_argument("grid mismatch between field and particle set");
}

}  // namespace hpm
