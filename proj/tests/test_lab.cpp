#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vvhyp/lab.hpp"
#include "vvhyp/viscous.hpp"

using namespace vvhyp;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
  Config cfg = Config::parse(
      "model = burgers\n"
      "# a comment\n"
      "epsilons = 0.1, 0.05, 0.025\n"
      "t = 1.5   # trailing comment\n"
      "quick = 1\n");
  CHECK(cfg.str("model", "?") == "burgers");
  CHECK(cfg.num("t", 0.0) == doctest::Approx(1.5));
  CHECK(cfg.flag("quick", false));
  CHECK(cfg.list("epsilons", {}).size() == 3);
  CHECK(cfg.num("missing", 7.0) == 7.0);
  CHECK_THROWS_AS(Config::parse("this is not key value\n"), Error);
}

TEST_CASE("config hash is canonical") {
  Config a = Config::parse("b = 2\na = 1\n");
  Config b = Config::parse("a = 1\nb = 2\n");
  CHECK(a.hash() == b.hash());
  b.set("c", "3");
  CHECK(a.hash() != b.hash());
}

TEST_CASE("report verdicts and csv") {
  Report rep;
  rep.experiment = "demo";
  rep.add_metric("x", 1.25);
  rep.check_le("small_enough", 0.5, 1.0);
  rep.check_ge("big_enough", 2.0, 1.0);
  CHECK(rep.pass());
  rep.check_true("boolean", false);
  CHECK(!rep.pass());
  const std::string path = "/tmp/vvhyp_report_test.csv";
  rep.write_csv(path);
  const std::string text = slurp(path);
  CHECK(text.find("metric,x") != std::string::npos);
  CHECK(text.find("verdict,small_enough") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("check registry") {
  CHECK(all_checks().size() >= 18);
  CHECK_THROWS_AS(run_check("not_a_check", Config{}), Error);
}

TEST_CASE("reports are byte-reproducible") {
  Config cfg;
  cfg.set("quick", "1");
  Report a = run_check("envelope", cfg);
  Report b = run_check("envelope", cfg);
  const std::string pa = "/tmp/vvhyp_rep_a.csv";
  const std::string pb = "/tmp/vvhyp_rep_b.csv";
  a.write_csv(pa);
  b.write_csv(pb);
  CHECK(slurp(pa) == slurp(pb));
  std::remove(pa.c_str());
  std::remove(pb.c_str());
}

TEST_CASE("quick checks pass") {
  Config cfg;
  cfg.set("quick", "1");
  // cheap subset; the full list runs in the acceptance suite
  for (const char* name : {"envelope", "riemann_shock", "riemann_rarefaction",
                           "decomposition_roundtrip", "wave_curve_tangency"}) {
    Report rep = run_check(name, cfg);
    INFO("check ", name);
    CHECK(rep.pass());
  }
}

TEST_CASE("shock-condition experiment finds the Burgers shock") {
  Config cfg;
  cfg.set("quick", "1");
  Report rep = exp_shock_conditions(cfg);
  CHECK(rep.pass());
  bool saw_lambda = false;
  for (const auto& [name, value] : rep.metrics)
    if (name == "lambda_hat") {
      saw_lambda = true;
      CHECK(value == doctest::Approx(0.5).epsilon(0.04));
    }
  CHECK(saw_lambda);
}

TEST_CASE("smooth solutions produce no detected jumps") {
  Config cfg;
  cfg.set("quick", "1");
  cfg.set("ul", "0.2");
  cfg.set("ur", "0.2");  // constant data: nothing to detect
  Report rep = exp_shock_conditions(cfg);
  bool found = true;
  for (const Verdict& v : rep.verdicts)
    if (v.check == "jump_detected") found = v.pass;
  CHECK(!found);

  // rarefaction data smooths out: still no jump at the probe times
  cfg.set("ul", "0");
  cfg.set("ur", "0.3");
  rep = exp_shock_conditions(cfg);
  for (const Verdict& v : rep.verdicts)
    if (v.check == "jump_detected") found = v.pass;
  CHECK(!found);
}

TEST_CASE("linear2 vanishing-viscosity error scales like sqrt(eps)") {
  Config cfg;
  cfg.set("model", "linear2");
  cfg.set("ul", "0.035,0.014");  // 0.05 r_1 + 0.03 r_2 jump, small data
  cfg.set("ur", "-0.021,0.028");
  cfg.set("epsilons", "0.1,0.05,0.025");
  cfg.set("dx_over_eps", "0.2");
  cfg.set("half_domain", "3");
  cfg.set("window", "2");
  cfg.set("ratio_threshold", "0.85");  // sqrt(2)/2 plus smearing slack
  Report rep = exp_vanishing_viscosity(cfg);
  CHECK(rep.pass());
  for (const auto& [name, value] : rep.metrics)
    if (name == "fit_exponent") {
      CHECK(value >= 0.3);
      CHECK(value <= 0.7);
    }
}

TEST_CASE("p-system pairs stay uniformly L1-stable") {
  Config cfg;
  cfg.set("model", "p_system:1.4");
  cfg.set("quick", "1");
  cfg.set("epsilon", "0.1");
  Report rep = exp_l1_stability(cfg);
  CHECK(rep.pass());
  for (const auto& [name, value] : rep.metrics)
    if (name == "max_lhat") CHECK(value <= 3.0);
}

TEST_CASE("propagation tail slopes steepen consistently with distance") {
  Config cfg;
  Report rep = exp_propagation_speed(cfg);
  CHECK(rep.pass());
  double near = 0.0, far = 0.0;
  for (const auto& [name, value] : rep.metrics) {
    if (name == "tail_slope_near") near = value;
    if (name == "tail_slope_far") far = value;
  }
  // gaussian-type tail: local log-slope roughly doubles with distance
  CHECK(near < 0.0);
  CHECK(far < near);
  CHECK(far / near == doctest::Approx(2.0).epsilon(0.45));
}

TEST_CASE("linear2 asymptotics decay like 1/sqrt(tau)") {
  Config cfg;
  cfg.set("model", "linear2");
  cfg.set("ul", "0.042,0.014");
  cfg.set("ur", "-0.014,0.028");
  cfg.set("taus", "2,4,8");
  cfg.set("dx", "0.08");
  cfg.set("bump1_amp", "0.02");   // keep the 1/tau bump term subdominant
  cfg.set("bump2_amp", "-0.015");
  Report rep = exp_asymptotics(cfg);
  CHECK(rep.pass());
  for (const auto& [name, value] : rep.metrics)
    if (name == "fit_exponent") {
      CHECK(value <= -0.3);
      CHECK(value >= -0.7);
    }
}

TEST_CASE("p-system shock drift matches the fan speed within 5%") {
  Config cfg;
  cfg.set("model", "p_system:1.4");
  // data with a single 1-shock: states from the first wave curve
  cfg.set("ul", "1,0");
  cfg.set("ur", "0.936936,0.077599");  // psi_1(s = 0.1)(u*), sigma = -1.23
  cfg.set("epsilon", "0.02");
  cfg.set("x0", "-3");
  cfg.set("x1", "1");
  cfg.set("t1", "0.6");
  cfg.set("t2", "0.8");
  cfg.set("compare_fan", "1");
  Report rep = exp_shock_conditions(cfg);
  CHECK(rep.pass());
}

TEST_CASE("viscosity-solution estimates vanish on self-similar data") {
  Config cfg;
  cfg.set("bump_amp", "0");  // pure Riemann datum: u is the fan itself
  Report rep = exp_viscosity_solution_check(cfg);
  for (const auto& [name, value] : rep.metrics)
    if (name.rfind("esharp_h_", 0) == 0) CHECK(std::abs(value) <= 1e-10);
}

TEST_CASE("manifest writing") {
  Config cfg;
  cfg.set("quick", "1");
  Report rep = run_check("envelope", cfg);
  const std::string path = "/tmp/vvhyp_manifest_test.txt";
  write_manifest(path, cfg, {rep}, 1.0);
  const std::string text = slurp(path);
  CHECK(text.find("pass = 1") != std::string::npos);
  CHECK(text.find("report.envelope = pass") != std::string::npos);
  CHECK(text.find("quick=1") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("identical data report the exact-equality flag") {
  Config cfg;
  cfg.set("identical", "1");
  cfg.set("dx", "0.08");
  Report rep = exp_l1_stability(cfg);
  CHECK(rep.pass());
  REQUIRE(rep.verdicts.size() == 1);
  CHECK(rep.verdicts[0].check == "exact_equality");
}

TEST_CASE("zero model perturbation gives zero distance") {
  Config cfg;
  cfg.set("quick", "1");
  SystemModel a = lookup_model("burgers");
  SystemModel b = lookup_model("burgers_shift:0");
  Grid1D g{-3.0, 0.05, 120};
  Field u0 = sample_field(g, 1, 0.0, [](double x) {
    return Vec{0.3 * std::exp(-x * x)};
  });
  SolveConfig sc;
  sc.epsilon = 0.05;
  sc.t_end = 0.3;
  Trajectory ta = solve(a, u0, sc);
  Trajectory tb = solve(b, u0, sc);
  CHECK(l1_distance(ta.back(), tb.back()) == 0.0);
}

TEST_CASE("viscosity-solution checker also accepts a viscous reference") {
  Config cfg;
  cfg.set("reference", "viscous");
  cfg.set("epsilon_ref", "0.02");
  cfg.set("h", "0.2,0.1");
  Report rep = exp_viscosity_solution_check(cfg);
  CHECK(rep.pass());
  int metrics_seen = 0;
  for (const auto& [name, value] : rep.metrics)
    if (name.rfind("esharp_h_", 0) == 0) {
      ++metrics_seen;
      CHECK(std::isfinite(value));
      CHECK(value >= 0.0);
    }
  CHECK(metrics_seen == 2);
}
