#ifndef VVHYP_MODEL_HPP_
#define VVHYP_MODEL_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vvhyp/linalg.hpp"

namespace vvhyp {

// A quasilinear strictly hyperbolic system u_t + A(u) u_x = eps u_xx on a
// neighborhood of a reference state. If `flux` is set the model is
// conservative with A = Df.
struct SystemModel {
  std::string name;
  int n = 1;
  std::function<Mat(const Vec&)> A;
  std::function<Vec(const Vec&)> flux;                 // optional
  std::function<Mat(const Vec&, const Vec&)> dA_dir;   // optional closed form
  Vec u_star;
  double radius = 0.5;
  double gap_tol = 1e-8;

  bool has_flux() const { return static_cast<bool>(flux); }

  Mat eval_A(const Vec& u) const { return A(u); }
  Vec eval_flux(const Vec& u) const;

  // Directional derivative (z . A)(u); falls back to central differences
  // with step 1e-6 (1 + |u|).
  Mat eval_dA(const Vec& u, const Vec& z) const;

  // Membership in the validity ball, with a roundoff-sized slop.
  bool inside_ball(const Vec& u) const;
};

struct Spectrum {
  Vec lambdas;  // strictly ascending
  Mat R;        // unit right eigenvectors (columns), sign-fixed
  Mat L;        // dual left eigenvectors (rows)

  Vec r(int i) const { return R.col(i); }
  Vec l(int i) const { return L.row(i); }
};

// Eigen-decomposition of A(u). The sign of each r_i is fixed by requiring
// its largest-magnitude entry to be positive (ties: first index), which
// makes u -> r_i(u) continuous on small neighborhoods.
Spectrum spectrum(const SystemModel& model, const Vec& u);

struct HyperbolicityReport {
  bool scalar = false;   // n == 1: gap is +infinity by convention
  double min_gap = 0.0;  // min over samples of lambda_{i+1} - lambda_i
  Vec argmin_state;
  int samples = 0;
  bool violated = false;  // min_gap < gap_tol somewhere
};

// Samples the validity ball |u - u*| <= radius on a deterministic
// low-discrepancy point set and reports the worst eigenvalue gap.
HyperbolicityReport check_strict_hyperbolicity(const SystemModel& model,
                                               int sample_count);

// Built-in benchmark systems, addressable by name. Parametric entries accept
// a suffix, e.g. "p_system:1.4" or "burgers_shift:0.01".
SystemModel lookup_model(const std::string& spec);
std::vector<std::string> builtin_model_names();

}  // namespace vvhyp

#endif  // VVHYP_MODEL_HPP_
