#include "vvhyp/viscous.hpp"

#include <algorithm>
#include <cmath>

namespace vvhyp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_abs_eigenvalue(const SystemModel& model, const Field& u) {
  double best = 0.0;
  for (int j = 0; j < u.grid.m; ++j) {
    Vec lam = eigenvalues_ascending(model.A(u.state(j)));
    best = std::max(best, std::max(std::abs(lam[0]), std::abs(lam[u.n - 1])));
  }
  return best;
}

void check_state(const SystemModel& model, const Field& u, double t) {
  for (int j = 0; j < u.grid.m; ++j) {
    Vec s = u.state(j);
    if (!all_finite(s) || !model.inside_ball(s))
      fail(ErrorCode::BlowUp, "state left the validity ball at t=" +
                                  std::to_string(t) + ", cell " +
                                  std::to_string(j));
  }
}

// du/dt = -A(u) D0 u + eps D2 u
void rhs_viscous(const SystemModel& model, const std::vector<double>& u,
                 const Grid1D& g, int n, double eps, std::vector<double>& out) {
  const double i2dx = 1.0 / (2.0 * g.dx);
  const double idx2 = 1.0 / (g.dx * g.dx);
  Vec uj(n), ul(n), ur(n);
  for (int j = 0; j < g.m; ++j) {
    const int jl = (j == 0) ? 0 : j - 1;
    const int jr = (j == g.m - 1) ? g.m - 1 : j + 1;
    for (int k = 0; k < n; ++k) {
      uj[k] = u[static_cast<size_t>(j) * n + k];
      ul[k] = u[static_cast<size_t>(jl) * n + k];
      ur[k] = u[static_cast<size_t>(jr) * n + k];
    }
    Vec d0 = i2dx * (ur - ul);
    Vec d2 = idx2 * (ur - 2.0 * uj + ul);
    Vec dudt = eps * d2 - model.A(uj) * d0;
    for (int k = 0; k < n; ++k) out[static_cast<size_t>(j) * n + k] = dudt[k];
  }
}

// dz/dt = -A(u) D0 z - (z . A(u)) D0 u + eps D2 z, along a frozen u field
void rhs_tangent(const SystemModel& model, const Field& u,
                 const std::vector<double>& z, const Grid1D& g, int n,
                 double eps, std::vector<double>& out) {
  const double i2dx = 1.0 / (2.0 * g.dx);
  const double idx2 = 1.0 / (g.dx * g.dx);
  Vec zj(n), zl(n), zr(n);
  for (int j = 0; j < g.m; ++j) {
    const int jl = (j == 0) ? 0 : j - 1;
    const int jr = (j == g.m - 1) ? g.m - 1 : j + 1;
    for (int k = 0; k < n; ++k) {
      zj[k] = z[static_cast<size_t>(j) * n + k];
      zl[k] = z[static_cast<size_t>(jl) * n + k];
      zr[k] = z[static_cast<size_t>(jr) * n + k];
    }
    Vec d0z = i2dx * (zr - zl);
    Vec d2z = idx2 * (zr - 2.0 * zj + zl);
    Vec uj = u.state(j);
    Vec d0u = i2dx * (u.state_clamped(j + 1) - u.state_clamped(j - 1));
    Vec dzdt = eps * d2z - model.A(uj) * d0z - model.eval_dA(uj, zj) * d0u;
    for (int k = 0; k < n; ++k) out[static_cast<size_t>(j) * n + k] = dzdt[k];
  }
}

std::vector<double> normalize_snapshots(const SolveConfig& cfg, double t0) {
  std::vector<double> times = cfg.snapshot_times;
  if (times.empty()) times.push_back(cfg.t_end);
  require(std::is_sorted(times.begin(), times.end()),
          ErrorCode::InvalidArgument, "snapshot_times must be sorted");
  require(times.front() >= t0 - 1e-12, ErrorCode::InvalidArgument,
          "snapshot before the initial time");
  return times;
}

Field interp_in_time(const Trajectory& traj, double t) {
  if (t <= traj.front().t) return traj.front();
  if (t >= traj.back().t) return traj.back();
  size_t k = 0;
  while (k + 1 < traj.size() && traj[k + 1].t < t) ++k;
  const Field& a = traj[k];
  const Field& b = traj[k + 1];
  const double w = (t - a.t) / (b.t - a.t);
  Field out = a;
  out.t = t;
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = (1.0 - w) * a.values[i] + w * b.values[i];
  return out;
}

}  // namespace

Trajectory solve(const SystemModel& model, const Field& u0,
                 const SolveConfig& cfg) {
  require(u0.n == model.n, ErrorCode::InvalidArgument, "dimension mismatch");
  require(u0.grid.m >= 8 && u0.grid.dx > 0.0, ErrorCode::InvalidArgument,
          "grid needs m >= 8 and dx > 0");
  require(cfg.epsilon > 0.0, ErrorCode::InvalidArgument, "epsilon > 0");
  require(cfg.cfl_adv > 0.0 && cfg.cfl_adv <= 0.5 && cfg.cfl_diff > 0.0 &&
              cfg.cfl_diff <= 0.5,
          ErrorCode::InvalidArgument, "cfl factors must be in (0, 0.5]");
  check_state(model, u0, u0.t);

  const std::vector<double> targets = normalize_snapshots(cfg, u0.t);
  const double t_final = std::max(cfg.t_end, targets.back());
  const Grid1D g = u0.grid;
  const int n = model.n;
  const size_t sz = u0.values.size();

  Trajectory out;
  Field cur = u0;
  const double t_eps = 1e-10 * (1.0 + std::abs(t_final));
  size_t next = 0;
  while (next < targets.size() && targets[next] <= cur.t + t_eps) {
    Field snap = cur;
    snap.t = targets[next];
    out.push_back(snap);
    ++next;
  }

  std::vector<double> k1(sz), k2(sz), k3(sz), k4(sz), tmp(sz);
  const double dt_diff = cfg.cfl_diff * g.dx * g.dx / (2.0 * cfg.epsilon);
  while (cur.t < t_final - t_eps) {
    const double maxlam = max_abs_eigenvalue(model, cur);
    double dt = std::min(cfg.dt_max, dt_diff);
    if (maxlam > 0.0) dt = std::min(dt, cfg.cfl_adv * g.dx / maxlam);
    const double t_stop =
        (next < targets.size()) ? std::min(targets[next], t_final) : t_final;
    dt = std::min(dt, t_stop - cur.t);
    if (dt < 1e-12)
      fail(ErrorCode::StepUnderflow, "dt underflow at t=" +
                                         std::to_string(cur.t));

    rhs_viscous(model, cur.values, g, n, cfg.epsilon, k1);
    for (size_t i = 0; i < sz; ++i) tmp[i] = cur.values[i] + 0.5 * dt * k1[i];
    rhs_viscous(model, tmp, g, n, cfg.epsilon, k2);
    for (size_t i = 0; i < sz; ++i) tmp[i] = cur.values[i] + 0.5 * dt * k2[i];
    rhs_viscous(model, tmp, g, n, cfg.epsilon, k3);
    for (size_t i = 0; i < sz; ++i) tmp[i] = cur.values[i] + dt * k3[i];
    rhs_viscous(model, tmp, g, n, cfg.epsilon, k4);
    for (size_t i = 0; i < sz; ++i)
      cur.values[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    cur.t += dt;
    check_state(model, cur, cur.t);

    while (next < targets.size() && cur.t >= targets[next] - t_eps) {
      Field snap = cur;
      snap.t = targets[next];
      out.push_back(snap);
      ++next;
    }
  }
  return out;
}

Trajectory solve_tangent(const SystemModel& model, const Trajectory& u_traj,
                         const Field& z0, const SolveConfig& cfg) {
  require(!u_traj.empty(), ErrorCode::InvalidArgument, "empty trajectory");
  require(z0.grid == u_traj.front().grid && z0.n == model.n,
          ErrorCode::GridMismatch, "tangent grid must match the trajectory");
  require(std::abs(z0.t - u_traj.front().t) <= 1e-12,
          ErrorCode::InvalidArgument, "z0 must start with the trajectory");
  for (size_t k = 0; k + 1 < u_traj.size(); ++k)
    require(u_traj[k + 1].t - u_traj[k].t <= 0.05 / cfg.epsilon + 1e-12,
            ErrorCode::InvalidArgument,
            "snapshot spacing too coarse for tangent solving");

  const std::vector<double> targets = normalize_snapshots(cfg, z0.t);
  const double t_final = std::max(cfg.t_end, targets.back());
  const Grid1D g = z0.grid;
  const int n = model.n;
  const size_t sz = z0.values.size();

  Trajectory out;
  Field cur = z0;
  const double t_eps = 1e-10 * (1.0 + std::abs(t_final));
  size_t next = 0;
  while (next < targets.size() && targets[next] <= cur.t + t_eps) {
    Field snap = cur;
    snap.t = targets[next];
    out.push_back(snap);
    ++next;
  }

  std::vector<double> k1(sz), k2(sz), k3(sz), k4(sz), tmp(sz);
  const double dt_diff = cfg.cfl_diff * g.dx * g.dx / (2.0 * cfg.epsilon);
  while (cur.t < t_final - t_eps) {
    const Field u_now = interp_in_time(u_traj, cur.t);
    const double maxlam = max_abs_eigenvalue(model, u_now);
    double dt = std::min(cfg.dt_max, dt_diff);
    if (maxlam > 0.0) dt = std::min(dt, cfg.cfl_adv * g.dx / maxlam);
    const double t_stop =
        (next < targets.size()) ? std::min(targets[next], t_final) : t_final;
    dt = std::min(dt, t_stop - cur.t);
    if (dt < 1e-12)
      fail(ErrorCode::StepUnderflow, "dt underflow at t=" +
                                         std::to_string(cur.t));

    const Field u_half = interp_in_time(u_traj, cur.t + 0.5 * dt);
    const Field u_full = interp_in_time(u_traj, cur.t + dt);
    rhs_tangent(model, u_now, cur.values, g, n, cfg.epsilon, k1);
    for (size_t i = 0; i < sz; ++i) tmp[i] = cur.values[i] + 0.5 * dt * k1[i];
    rhs_tangent(model, u_half, tmp, g, n, cfg.epsilon, k2);
    for (size_t i = 0; i < sz; ++i) tmp[i] = cur.values[i] + 0.5 * dt * k2[i];
    rhs_tangent(model, u_half, tmp, g, n, cfg.epsilon, k3);
    for (size_t i = 0; i < sz; ++i) tmp[i] = cur.values[i] + dt * k3[i];
    rhs_tangent(model, u_full, tmp, g, n, cfg.epsilon, k4);
    for (size_t i = 0; i < sz; ++i)
      cur.values[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    cur.t += dt;
    for (size_t i = 0; i < sz; ++i)
      if (!std::isfinite(cur.values[i]))
        fail(ErrorCode::BlowUp, "tangent solution lost finiteness");

    while (next < targets.size() && cur.t >= targets[next] - t_eps) {
      Field snap = cur;
      snap.t = targets[next];
      out.push_back(snap);
      ++next;
    }
  }
  return out;
}

double heat_kernel(double lambda_star, double t, double x) {
  require(t > 0.0, ErrorCode::NonpositiveTime, "heat kernel needs t > 0");
  const double y = x - lambda_star * t;
  return std::exp(-y * y / (4.0 * t)) / (2.0 * std::sqrt(kPi * t));
}

KernelNorms kernel_norms(double t) {
  require(t > 0.0, ErrorCode::NonpositiveTime, "kernel norms need t > 0");
  KernelNorms out;
  out.g = 1.0;
  out.gx = 1.0 / std::sqrt(kPi * t);
  out.gxx = std::sqrt(2.0 / kPi) * std::exp(-0.5) / t;
  return out;
}

Field rescale_to_unit_viscosity(const Field& f, double epsilon) {
  require(epsilon > 0.0, ErrorCode::InvalidArgument, "epsilon > 0");
  Field out = f;
  out.grid.x0 = f.grid.x0 / epsilon;
  out.grid.dx = f.grid.dx / epsilon;
  out.t = f.t / epsilon;
  return out;
}

namespace {

double fit_exponent(const std::vector<double>& ts,
                    const std::vector<double>& ys, double lo, double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < lo || ts[i] > hi || ys[i] <= 0.0 || ts[i] <= 0.0) continue;
    const double x = std::log(ts[i]);
    const double y = std::log(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt < 2) return std::nan("");
  const double denom = cnt * sxx - sx * sx;
  if (denom == 0.0) return std::nan("");
  return (cnt * sxy - sx * sy) / denom;
}

}  // namespace

DecayReport decay_report(const Trajectory& traj, double fit_t_lo,
                         double fit_t_hi) {
  require(traj.size() >= 2, ErrorCode::InvalidArgument,
          "decay_report needs at least two snapshots");
  DecayReport rep;
  std::vector<double> ts, n1, n2, n3;
  for (const Field& f : traj) {
    Field d1 = diff1(f), d2 = diff2(f), d3 = diff3(f);
    DecayRow row;
    row.t = f.t;
    row.ux_l1 = l1_norm(d1);
    row.uxx_l1 = l1_norm(d2);
    row.uxxx_l1 = l1_norm(d3);
    row.ux_linf = linf_norm(d1);
    row.uxx_linf = linf_norm(d2);
    row.uxxx_linf = linf_norm(d3);
    rep.rows.push_back(row);
    ts.push_back(f.t);
    n1.push_back(row.ux_l1);
    n2.push_back(row.uxx_l1);
    n3.push_back(row.uxxx_l1);
  }
  rep.ux_exponent = fit_exponent(ts, n1, fit_t_lo, fit_t_hi);
  rep.uxx_exponent = fit_exponent(ts, n2, fit_t_lo, fit_t_hi);
  rep.uxxx_exponent = fit_exponent(ts, n3, fit_t_lo, fit_t_hi);
  return rep;
}

}  // namespace vvhyp
