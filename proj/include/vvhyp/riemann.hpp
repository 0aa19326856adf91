#ifndef VVHYP_RIEMANN_HPP_
#define VVHYP_RIEMANN_HPP_

#include <string>
#include <vector>

#include "vvhyp/model.hpp"
#include "vvhyp/waves.hpp"

namespace vvhyp {

struct RiemannParams {
  int nodes = 400;          // curve discretization M
  double eps_gamma = 0.3;   // Gamma-ball radius, also the dagger weight
  double s_max = 0.15;
  double fixed_point_tol = 1e-10;
  int fixed_point_max_iter = 200;
  double newton_tol = 1e-10;
  int newton_max_iter = 60;
  double newton_fd_step = 1e-6;
  double lax_tol = 1e-6;
  double env_tol = 1e-10;
};

// Discretized curve tau -> (u, v_i, sigma_i) on [0, |s|]. Negative-strength
// curves are stored in the mirrored parametrization (orientation = -1), in
// which the envelope construction is again a lower convex envelope and the
// node speeds are nondecreasing.
struct GammaCurve {
  int family = 0;
  double s = 0.0;
  int orientation = 1;
  std::vector<double> tau;
  std::vector<Vec> u;
  std::vector<double> v;
  std::vector<double> sigma;

  int nodes() const { return static_cast<int>(tau.size()); }
  const Vec& endpoint() const { return u.back(); }
};

// Cumulative trapezoid of lambda~_i along the curve; f(0) = 0.
std::vector<double> flux_integral(const SystemModel& model,
                                  const GammaCurve& curve);

struct Envelope {
  std::vector<double> values;  // envelope at the input nodes
  std::vector<double> slopes;  // left slope at each node; slopes[0] = first
                               // chord slope
};
Envelope lower_convex_envelope(const std::vector<double>& taus,
                               const std::vector<double>& fvals);
Envelope upper_concave_envelope(const std::vector<double>& taus,
                                const std::vector<double>& fvals);

// One application of the transformation T_{i,s}.
GammaCurve t_step(const SystemModel& model, const Vec& u_minus,
                  const GammaCurve& curve, const RiemannParams& params = {});

// Weighted norm |u|_inf + |v|_inf + eps |sigma|_inf of the node-wise
// difference of two curves on the same parameter grid.
double dagger_distance(const GammaCurve& a, const GammaCurve& b,
                       double eps_dagger);

// Straight-line initial curve (u^- + o tau r_i(u^-), 0, lambda_i(u^-)).
GammaCurve initial_curve(const SystemModel& model, const Vec& u_minus,
                         int family, double s, int nodes);

// Fixed point of T_{i,s} by direct iteration.
GammaCurve wave_curve(const SystemModel& model, const Vec& u_minus, int family,
                      double s, const RiemannParams& params = {});

// Endpoint of the wave curve: the right state Psi_i(s)(u^-).
Vec psi(const SystemModel& model, const Vec& u_minus, int family, double s,
        const RiemannParams& params = {});

struct WaveFan {
  Vec u_left, u_right;
  std::vector<double> strengths;        // s_1..s_n
  std::vector<GammaCurve> curves;       // one per family
  std::vector<Vec> intermediate_states; // u_0..u_n
  std::vector<double> speed_partition;  // lambda'_0..lambda'_n (+-inf ends)
  int families() const { return static_cast<int>(strengths.size()); }
};

WaveFan solve_riemann(const SystemModel& model, const Vec& u_minus,
                      const Vec& u_plus, const RiemannParams& params = {});

// Self-similar evaluation at xi = x/t; flat speed plateaus (shocks) jump.
Vec sample_fan(const WaveFan& fan, double xi);

// lambda (u+ - u-) - (f(u+) - f(u-)).
Vec rankine_hugoniot_residual(const SystemModel& model, const Vec& u_minus,
                              const Vec& u_plus, double lambda);

struct ShockRecord {
  int family;
  double tau_a, tau_b;
  double sigma;
  Vec u_left, u_right;
  double liu_margin;  // min over interior chords of (chord - sigma)
  bool liu_ok;
  double lax_left_margin;   // lambda_i(u_left) - sigma
  double lax_right_margin;  // sigma - lambda_i(u_right)
  bool lax_ok;
};
struct AdmissibilityReport {
  std::vector<ShockRecord> shocks;
  bool all_liu = true;
  bool all_lax = true;
  bool pass() const { return all_liu && all_lax; }
};
AdmissibilityReport check_admissibility(const WaveFan& fan,
                                        const SystemModel& model,
                                        const RiemannParams& params = {});

void write_fan_csv(const WaveFan& fan, const std::string& path);
void write_fan_profile_csv(const WaveFan& fan, double xi_lo, double xi_hi,
                           int count, const std::string& path);

}  // namespace vvhyp

#endif  // VVHYP_RIEMANN_HPP_
