#ifndef VVHYP_VISCOUS_HPP_
#define VVHYP_VISCOUS_HPP_

#include <vector>

#include "vvhyp/grid.hpp"
#include "vvhyp/model.hpp"

namespace vvhyp {

struct SolveConfig {
  double epsilon = 0.1;
  double t_end = 1.0;
  std::vector<double> snapshot_times;  // sorted, absolute; empty -> {t_end}
  double cfl_adv = 0.4;
  double cfl_diff = 0.4;
  double dt_max = 1e30;
};

// Explicit method-of-lines integration of u_t + A(u) u_x = eps u_xx with
// central differences and classical 4-stage Runge-Kutta stepping. Ghost cells
// copy the edge values. Returns one Field per snapshot time.
Trajectory solve(const SystemModel& model, const Field& u0,
                 const SolveConfig& cfg);

// Integrates the linearized equation
//   z_t + (A(u)z)_x - eps z_xx = (u_x . A(u)) z - (z . A(u)) u_x
// along a stored reference trajectory, interpolating u linearly in time
// between snapshots.
Trajectory solve_tangent(const SystemModel& model, const Trajectory& u_traj,
                         const Field& z0, const SolveConfig& cfg);

// Constant-coefficient Green kernel G(t,x) = exp(-(x-l*t)^2/4t) / (2 sqrt(pi t))
// and the closed-form L1 norms of (G, G_x, G_xx).
double heat_kernel(double lambda_star, double t, double x);
struct KernelNorms {
  double g;    // 1
  double gx;   // 1 / sqrt(pi t)
  double gxx;  // sqrt(2/pi) e^{-1/2} / t
};
KernelNorms kernel_norms(double t);

// Coordinate relabeling u^eps(t,x) = u(t/eps, x/eps); values are untouched.
Field rescale_to_unit_viscosity(const Field& f, double epsilon);

struct DecayRow {
  double t;
  double ux_l1, uxx_l1, uxxx_l1;
  double ux_linf, uxx_linf, uxxx_linf;
};
struct DecayReport {
  std::vector<DecayRow> rows;
  // least-squares power of t fitted to each L1 norm on [fit_t_lo, fit_t_hi]
  double ux_exponent, uxx_exponent, uxxx_exponent;
};
DecayReport decay_report(const Trajectory& traj, double fit_t_lo,
                         double fit_t_hi);

}  // namespace vvhyp

#endif  // VVHYP_VISCOUS_HPP_
