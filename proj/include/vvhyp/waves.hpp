#ifndef VVHYP_WAVES_HPP_
#define VVHYP_WAVES_HPP_

#include <vector>

#include "vvhyp/grid.hpp"
#include "vvhyp/model.hpp"

namespace vvhyp {

// Odd C^2 cutoff with theta(s) = s for |s| <= delta1 and theta(s) = 0 for
// |s| >= 3 delta1, |theta'| <= 1 throughout.
struct CutoffParams {
  double delta1 = 0.2;  // must lie in (0, 1/3]
};

double theta(double s, const CutoffParams& params);
double theta_prime(double s, const CutoffParams& params);

struct WaveParams {
  CutoffParams cutoff;
  double newton_tol = 1e-11;
  int newton_max_iter = 50;
  double fd_step = 1e-7;
  double jet_bound = 0.2;
};

// Unit vector r~_i(u, v_i, sigma_i) of the first-order center-manifold
// expansion and the associated speed lambda~_i = <r~_i, A(u) r~_i>.
// At v_i = 0 this returns exactly (r_i(u), lambda_i(u)).
struct RTilde {
  Vec r;
  double lambda;
};
RTilde rtilde(const SystemModel& model, const Vec& u, double v_i,
              double sigma_i, int family);
// Variant reusing an already computed spectrum of A(u).
RTilde rtilde_at(const SystemModel& model, const Spectrum& sp, const Vec& u,
                 double v_i, double sigma_i, int family);

// Forward map Lambda(u; v, w) -> (p, q) = (u_x, u_t) with
// sigma_i = lambda_i^* - theta(w_i / v_i) (ratio clamped near v_i = 0).
struct Jet {
  Vec p;  // u_x
  Vec q;  // u_t
};
Jet lambda_forward(const SystemModel& model, const Vec& u, const Vec& v,
                   const Vec& w, const WaveParams& params);

// Inverse of the forward map by damped Newton iteration; initial guess from
// the eigenvector projections.
struct JetComponents {
  Vec v;
  Vec w;
};
JetComponents decompose_jet(const SystemModel& model, const Vec& u,
                            const Vec& u_x, const Vec& u_t,
                            const WaveParams& params);

// Per-cell travelling-wave decomposition of a viscous snapshot. The jet is
// rescaled to unit viscosity (p = eps u_x, q = eps u_t with
// u_t = eps u_xx - A(u) u_x) before solving.
struct Decomposition {
  Grid1D grid;
  int n = 0;
  std::vector<double> v;             // m*n
  std::vector<double> w;             // m*n
  std::vector<double> sigma;         // m*n
  std::vector<double> lambda_tilde;  // m*n
  std::vector<double> r_tilde;       // m*n*n (cell, family, component)

  double& at(std::vector<double>& arr, int j, int i) {
    return arr[static_cast<size_t>(j) * n + i];
  }
  double get(const std::vector<double>& arr, int j, int i) const {
    return arr[static_cast<size_t>(j) * n + i];
  }
};
Decomposition decompose_field(const SystemModel& model, const Field& snapshot,
                              double epsilon, const WaveParams& params);

void write_decomposition_csv(const Decomposition& d, const std::string& path);

// Baseline eigenvector projection u_x^i = l_i(u) . u_x per cell (m*n array).
std::vector<double> eigen_components(const SystemModel& model,
                                     const Field& snapshot);

// Discrete residuals of the component equations
//   v_{i,t} + (lambda~_i v_i)_x - v_{i,xx} = phi_i   (same for w_i, psi_i)
// measured on three consecutive snapshots in unit-viscosity variables, plus
// the same residual for the eigenvector decomposition with speeds
// lambda_i(u).
struct SourceResiduals {
  Vec phi_l1;        // per family, integral of |phi_i|
  Vec psi_l1;        // per family, integral of |psi_i|
  Vec eigen_phi_l1;  // per family, eigenvector-decomposition baseline
  double phi_total() const;
  double psi_total() const;
  double eigen_total() const;
};
SourceResiduals source_residuals(const SystemModel& model, const Field& snap0,
                                 const Field& snap1, const Field& snap2,
                                 double epsilon, const WaveParams& params);

// Viscous travelling profile sampled on a uniform x-grid.
struct ProfileSample {
  double x;
  Vec u;
  Vec du;
};
struct TravellingProfile {
  double sigma = 0.0;
  int family = 0;
  std::vector<ProfileSample> samples;  // sorted by x

  Vec left_state() const { return samples.front().u; }
  Vec right_state() const { return samples.back().u; }
};

struct ProfileOptions {
  double sample_dx = 1e-3;
  double decay_rel = 1e-10;   // stop once |U'| < decay_rel * |v_mid|
  double ode_tol = 1e-12;
  size_t max_samples = 4000000;
};

// Integrates the travelling-wave system U'' = (A(U) - sigma) U' from the
// midpoint data (u_mid, v_mid r_i(u_mid)) in both directions. Conservative
// models use the first integral U' = f(U) - sigma U + c; a direction whose
// far state is a saddle of that flow is rebuilt by a backward sweep from the
// equilibrium, which keeps the heteroclinic numerically reachable.
TravellingProfile integrate_profile(const SystemModel& model, const Vec& u_mid,
                                    double v_mid, double sigma, int family,
                                    double span,
                                    const ProfileOptions& opts = {});

// Resamples a profile onto a viscous grid for the physical viscosity eps:
// u(x) = U((x - x_center) / eps), padded with the end states.
Field profile_to_field(const TravellingProfile& prof, const Grid1D& grid,
                       double epsilon, double x_center, double t = 0.0);

}  // namespace vvhyp

#endif  // VVHYP_WAVES_HPP_
