#ifndef VVHYP_FUNCTIONALS_HPP_
#define VVHYP_FUNCTIONALS_HPP_

#include <string>
#include <vector>

#include "vvhyp/grid.hpp"
#include "vvhyp/model.hpp"

namespace vvhyp {

// A scalar component (v_i, w_i, z, ...) on a uniform grid.
struct ScalarProfile {
  Grid1D grid;
  std::vector<double> values;

  ScalarProfile() = default;
  ScalarProfile(Grid1D g, std::vector<double> vals)
      : grid(g), values(std::move(vals)) {}
};

ScalarProfile component_profile(const Field& f, int component);

struct PlanarCurve {
  Grid1D grid;
  std::vector<double> px, py;
};

double total_variation(const ScalarProfile& z);

// Transversal interaction potential
//   Q = sum_{j,k} K(x_j - y_k) |z_j| |z#_k| dx^2,
// K(s) = 1/c for s >= 0 and e^{cs/2}/c for s < 0.
double interaction_potential(const ScalarProfile& z, const ScalarProfile& zs,
                             double c);
double interaction_kernel(double s, double c);

// Area functional A = 1/2 sum_{j<k} |v_j w_k - v_k w_j| dx^2.
double area_functional(const ScalarProfile& v, const ScalarProfile& w);

// Length functional L = sum_j sqrt(v_j^2 + w_j^2) dx.
double length_functional(const ScalarProfile& v, const ScalarProfile& w);

// Conserved-quantity / flux curve (u_j, f(u_j) - eps (u_x)_j) of a scalar
// conservative model.
PlanarCurve flux_curve(const SystemModel& model, const Field& snapshot,
                       double epsilon);

// One time sample handed to the decay monitor: functional values plus the
// instantaneous spatial dissipation integrals
//   diss_q = int |z z#| dx,     diss_a = int |v_x w - v w_x| dx.
struct FunctionalSample {
  double t = 0.0;
  double tv = 0.0;
  double q = 0.0;
  double a = 0.0;
  double l = 0.0;
  double diss_q = 0.0;
  double diss_a = 0.0;
  double min_gamma_x = 0.0;  // min_j |gamma_x|, for the Lemma-8.2 hypothesis
};

FunctionalSample functional_sample(double t, const ScalarProfile& v,
                                   const ScalarProfile& w,
                                   const ScalarProfile& z,
                                   const ScalarProfile& zs, double c);
// Variant without a transversal pair (Q and diss_q left at zero).
FunctionalSample functional_sample(double t, const ScalarProfile& v,
                                   const ScalarProfile& w);

struct DecayInterval {
  double t0, t1;
  double dq, da, dl;            // functional increments
  double q_budget, a_budget;    // -(1-slack) * time-integrated dissipation
  bool q_ok, a_ok, l_ok;
  bool gamma_flagged;           // min |gamma_x| < 1e-10 at an endpoint
};
struct DecayMonitorReport {
  std::vector<DecayInterval> intervals;
  bool q_pass = true;
  bool a_pass = true;
  bool l_pass = true;
  bool pass() const { return q_pass && a_pass && l_pass; }
};

// Per-interval verification of
//   dQ <= -(1-slack) int int |z z#|,  dA <= -(1-slack) int int |v_x w - v w_x|,
//   dL <= 0,
// with time integrals by the trapezoid rule on consecutive samples.
DecayMonitorReport decay_monitor(const std::vector<FunctionalSample>& series,
                                 double slack = 0.15);

struct TameOscillationResult {
  double osc;      // oscillation of u over the triangle
  double tv_base;  // Tot.Var. of u(tau) over ]a,b[
  double ratio;    // osc / tv_base
  int points = 0;  // grid points inside the triangle
};

// Oscillation of the trajectory over the triangle
//   { (t,x) : t > tau, a + beta (t - tau) < x < b - beta (t - tau) }
// against the total variation of u(tau) on ]a,b[.
TameOscillationResult tame_oscillation(const Trajectory& traj, double a,
                                       double b, double tau, double beta);

void write_functional_series_csv(const std::vector<FunctionalSample>& series,
                                 const std::string& path);

}  // namespace vvhyp

#endif  // VVHYP_FUNCTIONALS_HPP_
