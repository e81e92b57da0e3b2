#include "hpm/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace hpm {

GridSpec::GridSpec(double lx, double ly, int nx, int ny)
    : lx_(lx), ly_(ly), nx_(nx), ny_(ny) {
  if (!(std::isfinite(lx) && std::isfinite(ly)) || lx <= 0.0 || ly <= 0.0)
    throw std::invalid_argument("GridSpec: domain lengths must be positive and finite");
  if (nx < 8 || ny < 8)
    throw std::invalid_argument(
        "GridSpec: need nx >= 8 and ny >= 8 so the cubic B-spline support "
        "does not self-overlap around the torus");
  dx_ = lx_ / nx_;
  dy_ = ly_ / ny_;
}

Vec2 GridSpec::wrap(Vec2 p) const {
  if (!is_finite(p)) throw std::domain_error("wrap: non-finite coordinates");
  double x = std::fmod(p.x, lx_);
  if (x < 0.0) x += lx_;
  if (x >= lx_) x = 0.0;
  double y = std::fmod(p.y, ly_);
  if (y < 0.0) y += ly_;
  if (y >= ly_) y = 0.0;
  return {x, y};
}

Vec2 GridSpec::min_image(Vec2 d) const {
  return {std::remainder(d.x, lx_), std::remainder(d.y, ly_)};
}

namespace {

void check_node(const GridSpec& grid, int k) {
  if (k < 0 || k >= grid.num_nodes())
    throw std::out_of_range("node index out of range");
}

}  // namespace

double psi_eval(const GridSpec& grid, int k, Vec2 p) {
  check_node(grid, k);
  Vec2 d = grid.min_image(p - grid.node_pos(k));
  return bspline3(d.x / grid.dx()) * bspline3(d.y / grid.dy());
}

Vec2 psi_grad(const GridSpec& grid, int k, Vec2 p) {
  check_node(grid, k);
  Vec2 d = grid.min_image(p - grid.node_pos(k));
  double tx = d.x / grid.dx(), ty = d.y / grid.dy();
  return {bspline3_deriv(tx) * bspline3(ty) / grid.dx(),
          bspline3(tx) * bspline3_deriv(ty) / grid.dy()};
}

double fe_eval(const GridSpec& grid, int k, Vec2 p) {
  check_node(grid, k);
  Vec2 d = grid.min_image(p - grid.node_pos(k));
  return hat1(d.x / grid.dx()) * hat1(d.y / grid.dy());
}

Vec2 fe_grad(const GridSpec& grid, int k, Vec2 p) {
  check_node(grid, k);
  Vec2 d = grid.min_image(p - grid.node_pos(k));
  double tx = d.x / grid.dx(), ty = d.y / grid.dy();
  return {hat1_deriv(tx) * hat1(ty) / grid.dx(),
          hat1(tx) * hat1_deriv(ty) / grid.dy()};
}

namespace {

inline int wrap_index(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

inline int base_cell(double u, int n) {
  int b = static_cast<int>(std::floor(u));
  // u = x/dx lies in [0, n) for wrapped x; guard the x == Lx rounding edge.
  if (b >= n) b = n - 1;
  if (b < 0) b = 0;
  return b;
}

}  // namespace

std::vector<int> support_nodes(const GridSpec& grid, Vec2 p, BasisKind kind) {
  double ux = p.x / grid.dx(), uy = p.y / grid.dy();
  int bx = base_cell(ux, grid.nx());
  int by = base_cell(uy, grid.ny());
  std::vector<int> out;
  if (kind == BasisKind::Particle) {
    out.reserve(16);
    for (int oy = -1; oy <= 2; ++oy) {
      int j = wrap_index(by + oy, grid.ny());
      for (int ox = -1; ox <= 2; ++ox)
        out.push_back(grid.node_index(wrap_index(bx + ox, grid.nx()), j));
    }
  } else {
    out.reserve(4);
    for (int oy = 0; oy <= 1; ++oy) {
      int j = wrap_index(by + oy, grid.ny());
      for (int ox = 0; ox <= 1; ++ox)
        out.push_back(grid.node_index(wrap_index(bx + ox, grid.nx()), j));
    }
  }
  return out;
}

PsiStencil make_psi_stencil(const GridSpec& grid, Vec2 p) {
  PsiStencil st;
  double ux = p.x / grid.dx(), uy = p.y / grid.dy();
  int bx = base_cell(ux, grid.nx());
  int by = base_cell(uy, grid.ny());

  double wx[4], wy[4], gx[4], gy[4];
  int ix[4], iy[4];
  for (int o = 0; o < 4; ++o) {
    double tx = ux - (bx + o - 1);
    double ty = uy - (by + o - 1);
    wx[o] = bspline3(tx);
    wy[o] = bspline3(ty);
    gx[o] = bspline3_deriv(tx) / grid.dx();
    gy[o] = bspline3_deriv(ty) / grid.dy();
    ix[o] = wrap_index(bx + o - 1, grid.nx());
    iy[o] = wrap_index(by + o - 1, grid.ny());
  }
  int s = 0;
  for (int oy = 0; oy < 4; ++oy) {
    for (int ox = 0; ox < 4; ++ox, ++s) {
      st.node[s] = grid.node_index(ix[ox], iy[oy]);
      st.w[s] = wx[ox] * wy[oy];
      st.grad[s] = {gx[ox] * wy[oy], wx[ox] * gy[oy]};
    }
  }
  return st;
}

}  // namespace hpm
