#include "vvhyp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vvhyp/errors.hpp"

namespace vvhyp {

Field sample_field(const Grid1D& grid, int n, double t,
                   const std::function<Vec(double)>& f) {
  Field out(grid, n, t);
  for (int j = 0; j < grid.m; ++j) out.set_state(j, f(grid.x(j)));
  return out;
}

Field constant_field(const Grid1D& grid, const Vec& value, double t) {
  Field out(grid, value.n, t);
  for (int j = 0; j < grid.m; ++j) out.set_state(j, value);
  return out;
}

Field diff1(const Field& f) {
  Field out(f.grid, f.n, f.t);
  const double inv = 1.0 / (2.0 * f.grid.dx);
  for (int j = 0; j < f.grid.m; ++j)
    out.set_state(j, inv * (f.state_clamped(j + 1) - f.state_clamped(j - 1)));
  return out;
}

Field diff2(const Field& f) {
  Field out(f.grid, f.n, f.t);
  const double inv = 1.0 / (f.grid.dx * f.grid.dx);
  for (int j = 0; j < f.grid.m; ++j) {
    Vec v = f.state_clamped(j + 1) - 2.0 * f.state(j) + f.state_clamped(j - 1);
    out.set_state(j, inv * v);
  }
  return out;
}

Field diff3(const Field& f) {
  Field out(f.grid, f.n, f.t);
  const double inv = 1.0 / (2.0 * f.grid.dx * f.grid.dx * f.grid.dx);
  for (int j = 0; j < f.grid.m; ++j) {
    Vec v = f.state_clamped(j + 2) - 2.0 * f.state_clamped(j + 1) +
            2.0 * f.state_clamped(j - 1) - f.state_clamped(j - 2);
    out.set_state(j, inv * v);
  }
  return out;
}

double l1_norm(const Field& f) {
  double s = 0.0;
  for (int j = 0; j < f.grid.m; ++j) s += norm2(f.state(j));
  return s * f.grid.dx;
}

double linf_norm(const Field& f) {
  double s = 0.0;
  for (int j = 0; j < f.grid.m; ++j) s = std::max(s, norm2(f.state(j)));
  return s;
}

double l1_distance(const Field& a, const Field& b) {
  require(a.grid == b.grid && a.n == b.n, ErrorCode::GridMismatch,
          "l1_distance needs matching grids");
  double s = 0.0;
  for (int j = 0; j < a.grid.m; ++j) s += norm2(a.state(j) - b.state(j));
  return s * a.grid.dx;
}

double l1_distance_window(const Field& a, const Field& b, double xlo,
                          double xhi) {
  require(a.grid == b.grid && a.n == b.n, ErrorCode::GridMismatch,
          "l1_distance needs matching grids");
  double s = 0.0;
  for (int j = 0; j < a.grid.m; ++j) {
    const double x = a.grid.x(j);
    if (x < xlo || x > xhi) continue;
    s += norm2(a.state(j) - b.state(j));
  }
  return s * a.grid.dx;
}

double total_variation_field(const Field& f, int component) {
  double s = 0.0;
  for (int j = 0; j + 1 < f.grid.m; ++j) {
    if (component >= 0) {
      s += std::abs(f.values[(j + 1) * static_cast<size_t>(f.n) + component] -
                    f.values[j * static_cast<size_t>(f.n) + component]);
    } else {
      Vec d = f.state(j + 1) - f.state(j);
      for (int k = 0; k < f.n; ++k) s += std::abs(d[k]);
    }
  }
  return s;
}

Vec interp_state(const Field& f, double x) {
  const double s = (x - f.grid.x(0)) / f.grid.dx;
  if (s <= 0.0) return f.state(0);
  if (s >= f.grid.m - 1) return f.state(f.grid.m - 1);
  const int j = static_cast<int>(s);
  const double w = s - j;
  return (1.0 - w) * f.state(j) + w * f.state(j + 1);
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  require(fp != nullptr, ErrorCode::IoError, "cannot open " + path);
  std::fprintf(fp, "t,x");
  const int n = traj.empty() ? 0 : traj.front().n;
  for (int k = 0; k < n; ++k) std::fprintf(fp, ",u%d", k + 1);
  std::fprintf(fp, "\n");
  for (const Field& f : traj) {
    for (int j = 0; j < f.grid.m; ++j) {
      std::fprintf(fp, "%.12e,%.12e", f.t, f.grid.x(j));
      for (int k = 0; k < f.n; ++k)
        std::fprintf(fp, ",%.12e", f.values[j * static_cast<size_t>(f.n) + k]);
      std::fprintf(fp, "\n");
    }
  }
  std::fclose(fp);
}

}  // namespace vvhyp
