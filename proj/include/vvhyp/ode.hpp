#ifndef VVHYP_ODE_HPP_
#define VVHYP_ODE_HPP_

#include <array>
#include <cmath>
#include <functional>

#include "vvhyp/errors.hpp"

namespace vvhyp {

// Small fixed-capacity state for the profile ODEs (dimension <= 2 * kMaxDim).
inline constexpr int kOdeMaxDim = 8;
using OdeState = std::array<double, kOdeMaxDim>;
using OdeRhs = std::function<void(double x, const OdeState& y, OdeState& dy)>;

struct OdeOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-14;
  double h_init = 1e-3;
  double h_min = 1e-13;
};

// Advances y from x to x_target (either direction) with the embedded
// Cash-Karp 4(5) pair. Throws NonConvergence if the step size underflows.
void ode_advance(const OdeRhs& f, int dim, double& x, OdeState& y,
                 double x_target, const OdeOptions& opts);

}  // namespace vvhyp

#endif  // VVHYP_ODE_HPP_
