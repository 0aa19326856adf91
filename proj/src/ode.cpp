#include "vvhyp/ode.hpp"

#include <algorithm>

namespace vvhyp {

namespace {

// Cash-Karp tableau
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 3.0 / 10.0, a42 = -9.0 / 10.0, a43 = 6.0 / 5.0;
constexpr double a51 = -11.0 / 54.0, a52 = 5.0 / 2.0, a53 = -70.0 / 27.0,
                 a54 = 35.0 / 27.0;
constexpr double a61 = 1631.0 / 55296.0, a62 = 175.0 / 512.0,
                 a63 = 575.0 / 13824.0, a64 = 44275.0 / 110592.0,
                 a65 = 253.0 / 4096.0;
constexpr double b1 = 37.0 / 378.0, b3 = 250.0 / 621.0, b4 = 125.0 / 594.0,
                 b6 = 512.0 / 1771.0;
constexpr double d1 = b1 - 2825.0 / 27648.0, d3 = b3 - 18575.0 / 48384.0,
                 d4 = b4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                 d6 = b6 - 0.25;

}  // namespace

void ode_advance(const OdeRhs& f, int dim, double& x, OdeState& y,
                 double x_target, const OdeOptions& opts) {
  const double dir = (x_target >= x) ? 1.0 : -1.0;
  double h = dir * std::min(opts.h_init, std::abs(x_target - x));
  OdeState k1{}, k2{}, k3{}, k4{}, k5{}, k6{}, tmp{}, ynew{};
  while (dir * (x_target - x) > 1e-15 * (1.0 + std::abs(x))) {
    if (dir * h > dir * (x_target - x)) h = x_target - x;
    f(x, y, k1);
    for (int i = 0; i < dim; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    f(x + 0.2 * h, tmp, k2);
    for (int i = 0; i < dim; ++i)
      tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(x + 0.3 * h, tmp, k3);
    for (int i = 0; i < dim; ++i)
      tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(x + 0.6 * h, tmp, k4);
    for (int i = 0; i < dim; ++i)
      tmp[i] =
          y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(x + h, tmp, k5);
    for (int i = 0; i < dim; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                           a64 * k4[i] + a65 * k5[i]);
    f(x + 0.875 * h, tmp, k6);

    double err = 0.0;
    for (int i = 0; i < dim; ++i) {
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b6 * k6[i]);
      const double ei = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                             d5 * k5[i] + d6 * k6[i]);
      const double sc =
          opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]),
                                                 std::abs(ynew[i]));
      err = std::max(err, std::abs(ei) / sc);
    }
    if (err <= 1.0) {
      x += h;
      y = ynew;
    }
    const double factor =
        (err > 0.0) ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
    h *= factor;
    if (std::abs(h) < opts.h_min)
      fail(ErrorCode::NonConvergence, "ODE step size underflow");
  }
}

}  // namespace vvhyp
