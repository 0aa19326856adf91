#ifndef VVHYP_GRID_HPP_
#define VVHYP_GRID_HPP_

#include <functional>
#include <string>
#include <vector>

#include "vvhyp/linalg.hpp"

namespace vvhyp {

// Uniform cell-centered grid. The only boundary policy is constant
// extrapolation of the edge cells, which emulates data constant near +-inf.
struct Grid1D {
  double x0 = 0.0;  // left edge
  double dx = 0.0;
  int m = 0;

  double x(int j) const { return x0 + (j + 0.5) * dx; }
  bool operator==(const Grid1D& o) const = default;
};

struct Field {
  Grid1D grid;
  double t = 0.0;
  int n = 1;
  std::vector<double> values;  // m * n, cell-major

  Field() = default;
  Field(Grid1D g, int dim, double time = 0.0)
      : grid(g), t(time), n(dim), values(static_cast<size_t>(g.m) * dim, 0.0) {}

  Vec state(int j) const {
    Vec u(n);
    for (int k = 0; k < n; ++k) u[k] = values[static_cast<size_t>(j) * n + k];
    return u;
  }
  void set_state(int j, const Vec& u) {
    for (int k = 0; k < n; ++k) values[static_cast<size_t>(j) * n + k] = u[k];
  }
  // ghost-aware access: clamps the index to [0, m-1]
  Vec state_clamped(int j) const {
    if (j < 0) j = 0;
    if (j >= grid.m) j = grid.m - 1;
    return state(j);
  }
};

using Trajectory = std::vector<Field>;

Field sample_field(const Grid1D& grid, int n, double t,
                   const std::function<Vec(double)>& f);
Field constant_field(const Grid1D& grid, const Vec& value, double t = 0.0);

// Central differences with constant-extrapolation ghosts.
Field diff1(const Field& f);   // (u_{j+1} - u_{j-1}) / (2 dx)
Field diff2(const Field& f);   // (u_{j+1} - 2 u_j + u_{j-1}) / dx^2
Field diff3(const Field& f);   // (u_{j+2} - 2u_{j+1} + 2u_{j-1} - u_{j-2}) / (2 dx^3)

// Midpoint-rule norms; per-cell states measured in the Euclidean norm.
double l1_norm(const Field& f);
double linf_norm(const Field& f);
double l1_distance(const Field& a, const Field& b);
double l1_distance_window(const Field& a, const Field& b, double xlo,
                          double xhi);

// Total variation: sum over cells of |u_{j+1} - u_j| (component-summed for
// systems).
double total_variation_field(const Field& f, int component = -1);

// Linear interpolation of the field at point x (clamped at the edges).
Vec interp_state(const Field& f, double x);

void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace vvhyp

#endif  // VVHYP_GRID_HPP_
