#include "hpm/assembly.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace hpm {

namespace {

// Reference-cell tables for the bilinear quad: 2x2 Gauss points on [0,1]^2,
// local node order (0,0), (1,0), (0,1), (1,1).
struct ElementTables {
  std::array<std::array<double, 4>, 4> n;    // n[q][a]
  std::array<std::array<double, 4>, 4> dndx; // physical x-derivative
  std::array<std::array<double, 4>, 4> dndy;
  double wq;                                 // physical weight per point
};

ElementTables make_tables(const GridSpec& grid) {
  ElementTables t{};
  const double g0 = 0.5 - 0.5 / std::sqrt(3.0);
  const double g1 = 0.5 + 0.5 / std::sqrt(3.0);
  const double gp[2] = {g0, g1};
  int q = 0;
  for (int qx = 0; qx < 2; ++qx) {
    for (int qy = 0; qy < 2; ++qy, ++q) {
      double xi = gp[qx], eta = gp[qy];
      t.n[q] = {(1 - xi) * (1 - eta), xi * (1 - eta), (1 - xi) * eta, xi * eta};
      t.dndx[q] = {-(1 - eta) / grid.dx(), (1 - eta) / grid.dx(),
                   -eta / grid.dx(), eta / grid.dx()};
      t.dndy[q] = {-(1 - xi) / grid.dy(), -xi / grid.dy(),
                   (1 - xi) / grid.dy(), xi / grid.dy()};
    }
  }
  t.wq = grid.cell_area() / 4.0;
  return t;
}

inline std::array<int, 4> element_nodes(const GridSpec& grid, int ci, int cj) {
  int ip = (ci + 1) % grid.nx();
  int jp = (cj + 1) % grid.ny();
  return {grid.node_index(ci, cj), grid.node_index(ip, cj),
          grid.node_index(ci, jp), grid.node_index(ip, jp)};
}

// 9-point periodic pattern shared by M, A and B.
SparseOperator make_fe_pattern(const GridSpec& grid) {
  std::vector<std::vector<int>> rows(grid.num_nodes());
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      auto& r = rows[grid.node_index(i, j)];
      for (int oj = -1; oj <= 1; ++oj) {
        int jj = (j + oj + grid.ny()) % grid.ny();
        for (int oi = -1; oi <= 1; ++oi) {
          int ii = (i + oi + grid.nx()) % grid.nx();
          r.push_back(grid.node_index(ii, jj));
        }
      }
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
    }
  }
  return SparseOperator(grid.num_nodes(), rows);
}

// Shared element loop: ke[a][b] += wq * w(xq) * (Na Nb + alpha^2 grad Na . grad Nb),
// with w either identically 1 or the interpolated nodal weight.
SparseOperator assemble_fe(const GridSpec& grid, double alpha,
                           const ScalarField* weight) {
  SparseOperator op = make_fe_pattern(grid);
  const ElementTables t = make_tables(grid);
  const double a2 = alpha * alpha;
  for (int cj = 0; cj < grid.ny(); ++cj) {
    for (int ci = 0; ci < grid.nx(); ++ci) {
      auto loc = element_nodes(grid, ci, cj);
      double ke[4][4] = {};
      for (int q = 0; q < 4; ++q) {
        double w = 1.0;
        if (weight) {
          w = 0.0;
          for (int a = 0; a < 4; ++a) w += t.n[q][a] * (*weight)[loc[a]];
        }
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            ke[a][b] += t.wq * w *
                        (t.n[q][a] * t.n[q][b] +
                         a2 * (t.dndx[q][a] * t.dndx[q][b] + t.dndy[q][a] * t.dndy[q][b]));
      }
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) op.coeff_ref(loc[a], loc[b]) += ke[a][b];
    }
  }
  return op;
}

}  // namespace

SparseOperator assemble_mass(const GridSpec& grid) {
  return assemble_fe(grid, 0.0, nullptr);
}

SparseOperator assemble_helmholtz(const GridSpec& grid, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("assemble_helmholtz: alpha must be >= 0");
  return assemble_fe(grid, alpha, nullptr);
}

SparseOperator assemble_weighted_helmholtz(const GridSpec& grid, double alpha,
                                           const ScalarField& weight) {
  require_same_grid(grid, weight.grid);
  for (int k = 0; k < weight.size(); ++k)
    if (!(weight[k] > 0.0))
      throw std::domain_error("assemble_weighted_helmholtz: non-positive weight at node " +
                              std::to_string(k));
  return assemble_fe(grid, alpha, &weight);
}

std::vector<double> kinetic_weight_gradient(const GridSpec& grid, double alpha,
                                            const VectorField& u) {
  require_same_grid(grid, u.grid);
  const ElementTables t = make_tables(grid);
  const double a2 = alpha * alpha;
  std::vector<double> out(grid.num_nodes(), 0.0);
  for (int cj = 0; cj < grid.ny(); ++cj) {
    for (int ci = 0; ci < grid.nx(); ++ci) {
      auto loc = element_nodes(grid, ci, cj);
      for (int q = 0; q < 4; ++q) {
        Vec2 uq{}, ux{}, uy{};
        for (int a = 0; a < 4; ++a) {
          uq += t.n[q][a] * u[loc[a]];
          ux += t.dndx[q][a] * u[loc[a]];
          uy += t.dndy[q][a] * u[loc[a]];
        }
        double e = 0.5 * (dot(uq, uq) + a2 * (dot(ux, ux) + dot(uy, uy)));
        for (int a = 0; a < 4; ++a) out[loc[a]] += t.wq * e * t.n[q][a];
      }
    }
  }
  return out;
}

}  // namespace hpm
