#pragma once

#include <array>
#include <vector>

#include "hpm/vec.hpp"

namespace hpm {

/// Uniform rectangular grid on the periodic square [0,Lx) x [0,Ly).
/// Node k <-> (i, j) with k = j*nx + i; node position (i*dx, j*dy).
class GridSpec {
 public:
  GridSpec(double lx, double ly, int nx, int ny);

  double lx() const { return lx_; }
  double ly() const { return ly_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  /// Cell measure dS = dx*dy.
  double cell_area() const { return dx_ * dy_; }
  int num_nodes() const { return nx_ * ny_; }

  int node_index(int i, int j) const { return j * nx_ + i; }
  Vec2 node_pos(int k) const {
    return {(k % nx_) * dx_, (k / nx_) * dy_};
  }

  /// Canonical representative on [0,Lx) x [0,Ly). Throws on non-finite input.
  Vec2 wrap(Vec2 p) const;

  /// Minimal-image difference, each component in [-L/2, L/2].
  Vec2 min_image(Vec2 d) const;

  bool same_layout(const GridSpec& o) const {
    return lx_ == o.lx_ && ly_ == o.ly_ && nx_ == o.nx_ && ny_ == o.ny_;
  }

 private:
  double lx_, ly_;
  int nx_, ny_;
  double dx_, dy_;
};

enum class BasisKind {
  Particle,       // psi: tensor product of cubic B-splines, 4x4 cell support
  FiniteElement,  // N: bilinear quadrilateral hat, 2x2 cell support
};

/// Centered cardinal cubic B-spline with unit knot spacing; b3(0) = 2/3,
/// support (-2, 2), partition of unity on integer shifts.
inline double bspline3(double t) {
  double a = std::fabs(t);
  if (a < 1.0) return 2.0 / 3.0 - a * a * (1.0 - 0.5 * a);
  if (a < 2.0) {
    double c = 2.0 - a;
    return c * c * c / 6.0;
  }
  return 0.0;
}

inline double bspline3_deriv(double t) {
  double a = std::fabs(t);
  double s = t < 0.0 ? -1.0 : 1.0;
  if (a < 1.0) return s * a * (1.5 * a - 2.0);
  if (a < 2.0) {
    double c = 2.0 - a;
    return -s * 0.5 * c * c;
  }
  return 0.0;
}

/// Bilinear hat with unit spacing: 1-|t| on [-1,1].
inline double hat1(double t) {
  double a = std::fabs(t);
  return a < 1.0 ? 1.0 - a : 0.0;
}

inline double hat1_deriv(double t) {
  double a = std::fabs(t);
  if (a >= 1.0 || t == 0.0) return 0.0;
  return t < 0.0 ? 1.0 : -1.0;
}

/// psi_k(p): tensor cubic B-spline centered at node k, knot spacing (dx, dy),
/// evaluated with the minimal-image difference p - x_k.
double psi_eval(const GridSpec& grid, int k, Vec2 p);

/// Gradient of psi_k with respect to the evaluation point p.
Vec2 psi_grad(const GridSpec& grid, int k, Vec2 p);

/// N_k(p): bilinear hat at node k; N_i(x_j) = delta_ij.
double fe_eval(const GridSpec& grid, int k, Vec2 p);

Vec2 fe_grad(const GridSpec& grid, int k, Vec2 p);

/// Nodes whose basis support contains p, row-major over the local stencil:
/// 16 for the particle basis, 4 for the finite-element basis.
std::vector<int> support_nodes(const GridSpec& grid, Vec2 p, BasisKind kind);

/// Precomputed 4x4 evaluation stencil of the particle basis at one point:
/// node indices, values and gradients, in the support_nodes ordering.
struct PsiStencil {
  std::array<int, 16> node;
  std::array<double, 16> w;
  std::array<Vec2, 16> grad;
};

PsiStencil make_psi_stencil(const GridSpec& grid, Vec2 p);

}  // namespace hpm
