#include "vvhyp/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace vvhyp {

namespace {
constexpr int kFunctionalCellCap = 4096;  // double sums are O(m^2)

void check_pair(const ScalarProfile& a, const ScalarProfile& b) {
  require(a.grid == b.grid, ErrorCode::GridMismatch,
          "profiles on different grids");
  require(a.grid.m <= kFunctionalCellCap, ErrorCode::InvalidArgument,
          "profile too long for the O(m^2) functionals");
}
}  // namespace

ScalarProfile component_profile(const Field& f, int component) {
  require(component >= 0 && component < f.n, ErrorCode::InvalidArgument,
          "component index");
  ScalarProfile out;
  out.grid = f.grid;
  out.values.resize(f.grid.m);
  for (int j = 0; j < f.grid.m; ++j)
    out.values[j] = f.values[static_cast<size_t>(j) * f.n + component];
  return out;
}

double total_variation(const ScalarProfile& z) {
  double s = 0.0;
  for (size_t j = 0; j + 1 < z.values.size(); ++j)
    s += std::abs(z.values[j + 1] - z.values[j]);
  return s;
}

double interaction_kernel(double s, double c) {
  require(c > 0.0, ErrorCode::NonpositiveGap, "speed gap c must be positive");
  if (s >= 0.0) return 1.0 / c;
  return std::exp(c * s / 2.0) / c;
}

double interaction_potential(const ScalarProfile& z, const ScalarProfile& zs,
                             double c) {
  require(c > 0.0, ErrorCode::NonpositiveGap, "speed gap c must be positive");
  check_pair(z, zs);
  const int m = z.grid.m;
  const double dx2 = z.grid.dx * z.grid.dx;
  double q = 0.0;
  for (int j = 0; j < m; ++j) {
    const double zj = std::abs(z.values[j]);
    if (zj == 0.0) continue;
    const double xj = z.grid.x(j);
    for (int k = 0; k < m; ++k) {
      const double zk = std::abs(zs.values[k]);
      if (zk == 0.0) continue;
      q += interaction_kernel(xj - zs.grid.x(k), c) * zj * zk;
    }
  }
  return q * dx2;
}

double area_functional(const ScalarProfile& v, const ScalarProfile& w) {
  check_pair(v, w);
  const int m = v.grid.m;
  const double dx2 = v.grid.dx * v.grid.dx;
  double a = 0.0;
  for (int j = 0; j < m; ++j) {
    const double vj = v.values[j], wj = w.values[j];
    for (int k = j + 1; k < m; ++k)
      a += std::abs(vj * w.values[k] - v.values[k] * wj);
  }
  return 0.5 * a * dx2;
}

double length_functional(const ScalarProfile& v, const ScalarProfile& w) {
  check_pair(v, w);
  double l = 0.0;
  for (int j = 0; j < v.grid.m; ++j)
    l += std::hypot(v.values[j], w.values[j]);
  return l * v.grid.dx;
}

PlanarCurve flux_curve(const SystemModel& model, const Field& snapshot,
                       double epsilon) {
  require(model.n == 1, ErrorCode::NotScalar, "flux_curve is scalar-only");
  require(model.has_flux(), ErrorCode::NoFlux, "flux_curve needs a flux");
  PlanarCurve out;
  out.grid = snapshot.grid;
  out.px.resize(snapshot.grid.m);
  out.py.resize(snapshot.grid.m);
  Field ux = diff1(snapshot);
  for (int j = 0; j < snapshot.grid.m; ++j) {
    const Vec u = snapshot.state(j);
    out.px[j] = u[0];
    out.py[j] = model.eval_flux(u)[0] - epsilon * ux.state(j)[0];
  }
  return out;
}

namespace {

double dissipation_a(const ScalarProfile& v, const ScalarProfile& w) {
  const int m = v.grid.m;
  const double i2dx = 1.0 / (2.0 * v.grid.dx);
  double s = 0.0;
  for (int j = 0; j < m; ++j) {
    const int jl = (j == 0) ? 0 : j - 1;
    const int jr = (j == m - 1) ? m - 1 : j + 1;
    const double vx = (v.values[jr] - v.values[jl]) * i2dx;
    const double wx = (w.values[jr] - w.values[jl]) * i2dx;
    s += std::abs(vx * w.values[j] - v.values[j] * wx);
  }
  return s * v.grid.dx;
}

double dissipation_q(const ScalarProfile& z, const ScalarProfile& zs) {
  double s = 0.0;
  for (int j = 0; j < z.grid.m; ++j)
    s += std::abs(z.values[j] * zs.values[j]);
  return s * z.grid.dx;
}

double min_gamma_x(const ScalarProfile& v, const ScalarProfile& w) {
  double s = std::numeric_limits<double>::infinity();
  for (int j = 0; j < v.grid.m; ++j)
    s = std::min(s, std::hypot(v.values[j], w.values[j]));
  return s;
}

}  // namespace

FunctionalSample functional_sample(double t, const ScalarProfile& v,
                                   const ScalarProfile& w,
                                   const ScalarProfile& z,
                                   const ScalarProfile& zs, double c) {
  FunctionalSample s = functional_sample(t, v, w);
  s.q = interaction_potential(z, zs, c);
  s.diss_q = dissipation_q(z, zs);
  return s;
}

FunctionalSample functional_sample(double t, const ScalarProfile& v,
                                   const ScalarProfile& w) {
  check_pair(v, w);
  FunctionalSample s;
  s.t = t;
  s.tv = total_variation(v);
  s.a = area_functional(v, w);
  s.l = length_functional(v, w);
  s.diss_a = dissipation_a(v, w);
  s.min_gamma_x = min_gamma_x(v, w);
  return s;
}

DecayMonitorReport decay_monitor(const std::vector<FunctionalSample>& series,
                                 double slack) {
  require(series.size() >= 3, ErrorCode::InvalidArgument,
          "decay_monitor needs at least three samples");
  DecayMonitorReport rep;
  for (size_t k = 0; k + 1 < series.size(); ++k) {
    const FunctionalSample& a = series[k];
    const FunctionalSample& b = series[k + 1];
    DecayInterval iv;
    iv.t0 = a.t;
    iv.t1 = b.t;
    const double dt = b.t - a.t;
    iv.dq = b.q - a.q;
    iv.da = b.a - a.a;
    iv.dl = b.l - a.l;
    iv.q_budget = -(1.0 - slack) * 0.5 * (a.diss_q + b.diss_q) * dt;
    iv.a_budget = -(1.0 - slack) * 0.5 * (a.diss_a + b.diss_a) * dt;
    const double tol_q = 1e-12 + 1e-9 * std::abs(a.q);
    const double tol_a = 1e-12 + 1e-9 * std::abs(a.a);
    const double tol_l = 1e-12 + 1e-9 * std::abs(a.l);
    iv.q_ok = iv.dq <= iv.q_budget + tol_q;
    iv.a_ok = iv.da <= iv.a_budget + tol_a;
    iv.l_ok = iv.dl <= tol_l;
    iv.gamma_flagged = std::min(a.min_gamma_x, b.min_gamma_x) < 1e-10;
    rep.q_pass = rep.q_pass && iv.q_ok;
    rep.a_pass = rep.a_pass && iv.a_ok;
    rep.l_pass = rep.l_pass && iv.l_ok;
    rep.intervals.push_back(iv);
  }
  return rep;
}

TameOscillationResult tame_oscillation(const Trajectory& traj, double a,
                                       double b, double tau, double beta) {
  require(!traj.empty(), ErrorCode::InvalidArgument, "empty trajectory");
  const double t_end = traj.back().t;
  require(b - a > 2.0 * beta * (t_end - tau), ErrorCode::EmptyTriangle,
          "triangle closes before t_end");

  // base snapshot at tau
  const Field* base = nullptr;
  for (const Field& f : traj)
    if (std::abs(f.t - tau) <= 1e-9 * (1.0 + std::abs(tau))) base = &f;
  require(base != nullptr, ErrorCode::InvalidArgument,
          "no snapshot at t = tau");

  const int n = base->n;
  Vec lo(n), hi(n);
  for (int k = 0; k < n; ++k) {
    lo[k] = std::numeric_limits<double>::infinity();
    hi[k] = -std::numeric_limits<double>::infinity();
  }
  int points = 0;
  for (const Field& f : traj) {
    if (f.t <= tau) continue;
    const double xl = a + beta * (f.t - tau);
    const double xr = b - beta * (f.t - tau);
    for (int j = 0; j < f.grid.m; ++j) {
      const double x = f.grid.x(j);
      if (x <= xl || x >= xr) continue;
      ++points;
      Vec u = f.state(j);
      for (int k = 0; k < n; ++k) {
        lo[k] = std::min(lo[k], u[k]);
        hi[k] = std::max(hi[k], u[k]);
      }
    }
  }
  require(points > 0, ErrorCode::EmptyTriangle,
          "no grid points inside the triangle");

  TameOscillationResult out;
  out.points = points;
  out.osc = 0.0;
  for (int k = 0; k < n; ++k) out.osc = std::max(out.osc, hi[k] - lo[k]);

  double tv = 0.0;
  for (int j = 0; j + 1 < base->grid.m; ++j) {
    if (base->grid.x(j) <= a || base->grid.x(j + 1) >= b) continue;
    Vec d = base->state(j + 1) - base->state(j);
    for (int k = 0; k < n; ++k) tv += std::abs(d[k]);
  }
  out.tv_base = tv;
  out.ratio = (tv > 0.0) ? out.osc / tv
                         : (out.osc == 0.0
                                ? 0.0
                                : std::numeric_limits<double>::infinity());
  return out;
}

void write_functional_series_csv(const std::vector<FunctionalSample>& series,
                                 const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  require(fp != nullptr, ErrorCode::IoError, "cannot open " + path);
  std::fprintf(fp, "t,TV,Q,A,L,diss_q,diss_a\n");
  for (const FunctionalSample& s : series)
    std::fprintf(fp, "%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e\n", s.t, s.tv,
                 s.q, s.a, s.l, s.diss_q, s.diss_a);
  std::fclose(fp);
}

}  // namespace vvhyp
