#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "vvhyp/viscous.hpp"

using namespace vvhyp;

namespace {

Grid1D grid_of(double x0, double x1, double dx) {
  return Grid1D{x0, dx, static_cast<int>(std::lround((x1 - x0) / dx))};
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("constant data is a fixed point, bit for bit") {
  SystemModel m = lookup_model("p_system:1.4");
  Field u0 = constant_field(grid_of(-1.0, 1.0, 0.05), Vec{1.1, 0.05});
  SolveConfig sc;
  sc.epsilon = 0.1;
  sc.t_end = 0.3;
  sc.snapshot_times = {0.1, 0.3};
  Trajectory traj = solve(m, u0, sc);
  for (const Field& f : traj)
    for (size_t i = 0; i < f.values.size(); ++i)
      CHECK(f.values[i] == u0.values[i]);
}

TEST_CASE("linear2 gaussian matches the advected-diffused closed form") {
  SystemModel m = lookup_model("linear2");
  const double eps = 0.05, t_end = 0.5, dx = 0.005;
  const double a = 0.1, s0 = 0.2;
  Spectrum sp = spectrum(m, m.u_star);
  Vec r1 = sp.r(0);  // lambda_1 = -1
  Grid1D g = grid_of(-3.0, 2.0, dx);
  Field u0 = sample_field(g, 2, 0.0, [&](double x) {
    return a * std::exp(-x * x / (2.0 * s0 * s0)) * r1;
  });
  SolveConfig sc;
  sc.epsilon = eps;
  sc.t_end = t_end;
  Trajectory traj = solve(m, u0, sc);
  const double var = s0 * s0 + 2.0 * eps * t_end;
  Field exact = sample_field(g, 2, t_end, [&](double x) {
    const double y = x + t_end;  // lambda_1 = -1
    return a * s0 / std::sqrt(var) * std::exp(-y * y / (2.0 * var)) * r1;
  });
  CHECK(l1_distance(traj.back(), exact) <= 1e-3);
}

TEST_CASE("Cole-Hopf viscous shock is stationary in the co-moving frame") {
  const double eps = 0.05, m_speed = 0.5, delta = 1.0;
  SystemModel m = lookup_model("burgers_shift:-0.5");
  Grid1D g = grid_of(-6.0, 6.0, eps / 4.0);
  Field u0 = sample_field(g, 1, 0.0, [&](double x) {
    return Vec{m_speed - 0.5 * delta * std::tanh(delta * x / (4.0 * eps))};
  });
  SolveConfig sc;
  sc.epsilon = eps;
  sc.t_end = 1.0;
  Trajectory traj = solve(m, u0, sc);
  CHECK(l1_distance(traj.back(), u0) <= 1e-3);
}

TEST_CASE("conservation of the cell average for burgers") {
  SystemModel m = lookup_model("burgers");
  Grid1D g = grid_of(-6.0, 6.0, 0.02);
  Field u0 = sample_field(g, 1, 0.0, [](double x) {
    return Vec{0.3 * std::exp(-x * x)};
  });
  SolveConfig sc;
  sc.epsilon = 0.05;
  sc.t_end = 1.0;
  Trajectory traj = solve(m, u0, sc);
  auto total = [&](const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * g.dx;
  };
  CHECK(std::abs(total(traj.back()) - total(u0)) <= 1e-8 * sc.t_end);
}

TEST_CASE("scalar L1 contraction") {
  SystemModel m = lookup_model("burgers");
  Grid1D g = grid_of(-4.0, 4.0, 0.02);
  Field u0 = sample_field(g, 1, 0.0, [](double x) {
    return Vec{0.3 * std::exp(-x * x)};
  });
  Field v0 = sample_field(g, 1, 0.0, [](double x) {
    return Vec{0.3 * std::exp(-x * x) + 0.1 * std::exp(-4.0 * (x - 1) * (x - 1))};
  });
  SolveConfig sc;
  sc.epsilon = 0.05;
  sc.t_end = 0.5;
  sc.snapshot_times = {0.1, 0.3, 0.5};
  Trajectory tu = solve(m, u0, sc);
  Trajectory tv = solve(m, v0, sc);
  const double d0 = l1_distance(u0, v0);
  for (size_t k = 0; k < tu.size(); ++k)
    CHECK(l1_distance(tu[k], tv[k]) <= d0 * (1.0 + 1e-6));
}

TEST_CASE("second-order grid convergence on smooth solutions") {
  SystemModel m = lookup_model("burgers");
  SolveConfig sc;
  sc.epsilon = 0.1;
  sc.t_end = 0.3;
  auto run = [&](double dx) {
    Grid1D g = grid_of(-4.0, 4.0, dx);
    Field u0 = sample_field(g, 1, 0.0, [](double x) {
      return Vec{0.3 * std::exp(-x * x)};
    });
    return solve(m, u0, sc).back();
  };
  Field c = run(0.08);
  Field f1 = run(0.04);
  Field f2 = run(0.02);
  // compare on the coarse cells (every 2nd / 4th fine cell midpoint aligns:
  // coarse cell j covers fine cells 2j, 2j+1)
  auto restrict_err = [&](const Field& coarse, const Field& fine) {
    double e = 0.0;
    const int ratio = static_cast<int>(std::lround(coarse.grid.dx / fine.grid.dx));
    for (int j = 0; j < coarse.grid.m; ++j) {
      double avg = 0.0;
      for (int q = 0; q < ratio; ++q) avg += fine.values[j * ratio + q];
      avg /= ratio;
      e += std::abs(coarse.values[j] - avg);
    }
    return e * coarse.grid.dx;
  };
  const double e1 = restrict_err(c, f1);
  const double e2 = restrict_err(f1, f2) * 2.0;  // same coarse measure scale
  const double order = std::log2(restrict_err(c, f1) / restrict_err(f1, f2));
  (void)e1;
  (void)e2;
  CHECK(order >= 1.7);
}

TEST_CASE("tangent solver") {
  SystemModel m = lookup_model("burgers");
  Grid1D g = grid_of(-4.0, 4.0, 0.02);
  Field u0 = sample_field(g, 1, 0.0, [](double x) {
    return Vec{-0.2 * std::tanh(x / 0.5)};
  });
  SolveConfig sc;
  sc.epsilon = 0.05;
  sc.t_end = 0.4;
  for (double t = 0.0; t <= 0.4 + 1e-12; t += 0.02)
    sc.snapshot_times.push_back(t);
  Trajectory tu = solve(m, u0, sc);

  SUBCASE("zero stays zero") {
    Field z0 = constant_field(g, Vec{0.0});
    Trajectory tz = solve_tangent(m, tu, z0, sc);
    for (double v : tz.back().values) CHECK(v == 0.0);
  }
  SUBCASE("linearity: doubling the data doubles the solution") {
    Field z0 = sample_field(g, 1, 0.0, [](double x) {
      return Vec{std::exp(-x * x)};
    });
    Field z2 = z0;
    for (double& v : z2.values) v *= 2.0;
    Trajectory ta = solve_tangent(m, tu, z0, sc);
    Trajectory tb = solve_tangent(m, tu, z2, sc);
    for (size_t i = 0; i < ta.back().values.size(); ++i)
      CHECK(tb.back().values[i] ==
            doctest::Approx(2.0 * ta.back().values[i]).epsilon(1e-13));
  }
  SUBCASE("z = u_x is a particular solution") {
    Field z0 = diff1(u0);
    Trajectory tz = solve_tangent(m, tu, z0, sc);
    Field ux = diff1(tu.back());
    CHECK(l1_distance(tz.back(), ux) <= 1e-3 * l1_norm(ux));
  }
  SUBCASE("grid mismatch is rejected") {
    Field z0 = constant_field(grid_of(-4.0, 4.0, 0.04), Vec{0.0});
    CHECK_THROWS_AS(solve_tangent(m, tu, z0, sc), Error);
  }
}

TEST_CASE("heat kernel and its norms") {
  CHECK(heat_kernel(0.0, 1.0, 0.0) ==
        doctest::Approx(1.0 / (2.0 * std::sqrt(kPi))).epsilon(1e-14));
  // peak rides at lambda* t
  CHECK(heat_kernel(0.7, 2.0, 1.4) == doctest::Approx(heat_kernel(0.0, 2.0, 0.0)));
  CHECK_THROWS_AS(heat_kernel(0.0, 0.0, 0.0), Error);
  CHECK_THROWS_AS(kernel_norms(-1.0), Error);

  for (double t : {0.3, 1.0, 4.0}) {
    KernelNorms kn = kernel_norms(t);
    CHECK(kn.g == 1.0);
    CHECK(kn.gx == doctest::Approx(1.0 / std::sqrt(kPi * t)).epsilon(1e-14));
    // quadrature oracle for the closed-form |G_xx| integral
    double acc_g = 0.0, acc_gx = 0.0, acc_gxx = 0.0;
    const double h = 1e-3;
    for (double x = -40.0; x <= 40.0; x += h) {
      const double y = x;
      const double gg = std::exp(-y * y / (4.0 * t)) /
                        (2.0 * std::sqrt(kPi * t));
      acc_g += gg * h;
      acc_gx += std::abs(-y / (2.0 * t) * gg) * h;
      acc_gxx += std::abs((y * y / (4.0 * t * t) - 1.0 / (2.0 * t)) * gg) * h;
    }
    CHECK(acc_g == doctest::Approx(kn.g).epsilon(1e-6));
    CHECK(acc_gx == doctest::Approx(kn.gx).epsilon(1e-6));
    CHECK(acc_gxx == doctest::Approx(kn.gxx).epsilon(1e-6));
  }
  CHECK(kernel_norms(1.0).gx == doctest::Approx(0.5641895835477563));
}

TEST_CASE("rescale to unit viscosity") {
  Grid1D g = grid_of(0.0, 1.0, 0.01);
  Field f = sample_field(g, 1, 2.0, [](double x) { return Vec{x}; });
  SUBCASE("identity at eps = 1") {
    Field r = rescale_to_unit_viscosity(f, 1.0);
    CHECK(r.grid.dx == f.grid.dx);
    CHECK(r.t == f.t);
    CHECK(r.values == f.values);
  }
  SUBCASE("pure relabeling") {
    Field r = rescale_to_unit_viscosity(f, 0.5);
    CHECK(r.grid.dx == doctest::Approx(0.02));
    CHECK(r.t == doctest::Approx(4.0));
    CHECK(r.values == f.values);
  }
  SUBCASE("round trip") {
    Field r = rescale_to_unit_viscosity(rescale_to_unit_viscosity(f, 0.5),
                                        1.0 / 0.5);
    CHECK(r.grid.dx == doctest::Approx(f.grid.dx));
    CHECK(r.t == doctest::Approx(f.t));
    CHECK(r.values == f.values);
  }
}

TEST_CASE("decay report") {
  SUBCASE("constant data has zero derivative norms") {
    SystemModel m = lookup_model("burgers");
    Field u0 = constant_field(grid_of(-1.0, 1.0, 0.05), Vec{0.2});
    SolveConfig sc;
    sc.epsilon = 1.0;
    sc.t_end = 0.1;
    sc.snapshot_times = {0.05, 0.1};
    DecayReport rep = decay_report(solve(m, u0, sc), 0.0, 1.0);
    for (const DecayRow& r : rep.rows) {
      CHECK(r.ux_l1 == 0.0);
      CHECK(r.uxx_l1 == 0.0);
      CHECK(r.uxxx_l1 == 0.0);
    }
  }
  SUBCASE("initial-layer smoothing rate of u_xx") {
    SystemModel m = lookup_model("burgers");
    Grid1D g = grid_of(-6.0, 6.0, 0.02);
    Field u0 = sample_field(g, 1, 0.0, [](double x) {
      return Vec{-0.4 * std::tanh(x / 0.1)};
    });
    SolveConfig sc;
    sc.epsilon = 1.0;
    sc.t_end = 0.2;
    for (double t = 0.01; t <= 0.2 + 1e-12; t += 0.01)
      sc.snapshot_times.push_back(t);
    Trajectory traj = solve(m, u0, sc);
    DecayReport rep = decay_report(traj, 0.01, 0.2);
    CHECK(rep.uxx_exponent >= -0.7);
    CHECK(rep.uxx_exponent <= -0.3);
    // scalar TV stays below its initial value (up to a 5% cushion)
    const double tv0 = l1_norm(diff1(u0));
    for (const DecayRow& r : rep.rows) CHECK(r.ux_l1 <= 1.05 * tv0);
  }
}

TEST_CASE("solver failure modes") {
  SystemModel m = lookup_model("nc_toy");  // radius 0.2
  SUBCASE("data outside the validity ball") {
    Field u0 = constant_field(grid_of(-1.0, 1.0, 0.1), Vec{0.5, 0.5});
    SolveConfig sc;
    sc.epsilon = 0.1;
    sc.t_end = 0.1;
    CHECK_THROWS_AS(solve(m, u0, sc), Error);
  }
  SUBCASE("dt underflow") {
    Field u0 = constant_field(grid_of(-1.0, 1.0, 0.1), Vec{0.0, 0.0});
    SolveConfig sc;
    sc.epsilon = 0.1;
    sc.t_end = 0.1;
    sc.dt_max = 1e-13;
    CHECK_THROWS_AS(solve(m, u0, sc), Error);
  }
  SUBCASE("cfl validation") {
    Field u0 = constant_field(grid_of(-1.0, 1.0, 0.1), Vec{0.0, 0.0});
    SolveConfig sc;
    sc.epsilon = 0.1;
    sc.t_end = 0.1;
    sc.cfl_adv = 0.9;
    CHECK_THROWS_AS(solve(m, u0, sc), Error);
  }
}
