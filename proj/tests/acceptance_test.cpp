// Acceptance suite: one test case per criterion, each printing a single
// pass/fail line. All thresholds live in the check implementations and are
// the library defaults; this binary runs them at full (non-quick) settings.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <chrono>
#include <cstdio>

#include "doctest.h"
#include "vvhyp/lab.hpp"

using namespace vvhyp;

namespace {

bool run_criterion(int number, const char* title, const char* check,
                   double budget_seconds, const Config& cfg = Config{}) {
  const auto t0 = std::chrono::steady_clock::now();
  Report rep = run_check(check, cfg);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const bool in_budget = wall <= budget_seconds;
  const bool ok = rep.pass() && in_budget;
  std::printf("[%s] criterion %2d: %s (%.1f s, budget %.0f s)\n",
              ok ? "PASS" : "FAIL", number, title, wall, budget_seconds);
  if (!rep.pass())
    for (const Verdict& v : rep.verdicts)
      if (!v.pass)
        std::printf("         failed: %s  metric=%.6e threshold=%.6e\n",
                    v.check.c_str(), v.metric, v.threshold);
  if (!in_budget) std::printf("         over the runtime budget\n");
  std::fflush(stdout);
  return ok;
}

}  // namespace

TEST_CASE("1. Burgers Riemann shock: sigma = 0.5 +- 1e-6") {
  CHECK(run_criterion(1, "Burgers Riemann shock sigma", "riemann_shock", 1.0));
}

TEST_CASE("2. Burgers rarefaction vs exact fan (L1 <= 5e-3)") {
  CHECK(run_criterion(2, "Burgers rarefaction fan", "riemann_rarefaction", 1.0));
}

TEST_CASE("3. envelope matches brute force to 1e-12") {
  CHECK(run_criterion(3, "convex envelope oracle", "envelope", 1.0));
}

TEST_CASE("4. contraction ratios (max <= 0.9, median <= 0.5)") {
  CHECK(run_criterion(4, "T_{i,s} contraction", "contraction", 10.0));
}

TEST_CASE("5. wave-curve tangency within 20|s|") {
  CHECK(run_criterion(5, "wave-curve tangency", "wave_curve_tangency", 10.0));
}

TEST_CASE("6. vanishing-viscosity convergence (ratio <= 0.7)") {
  CHECK(run_criterion(6, "vanishing-viscosity convergence", "vanishing_viscosity", 120.0));
}

TEST_CASE("7. Cole-Hopf profile drift <= 1e-3") {
  CHECK(run_criterion(7, "viscous shock fidelity", "viscous_shock_fidelity", 30.0));
}

TEST_CASE("8. scalar L1 contraction (<= 1 + 1e-6)") {
  CHECK(run_criterion(8, "scalar L1 contraction", "l1_stability", 60.0));
}

TEST_CASE("9. TV bounds (scalar nonincreasing; system <= 2 TV0)") {
  CHECK(run_criterion(9, "total-variation bounds", "tv_bound", 60.0));
}

TEST_CASE("10. interaction potential decay (Lemma 7.1)") {
  CHECK(run_criterion(10, "interaction potential decay", "interaction_decay", 30.0));
}

TEST_CASE("11. area/length decay (Lemmas 8.1-8.2)") {
  CHECK(run_criterion(11, "area/length decay", "area_length_decay", 30.0));
}

TEST_CASE("12. decomposition round trip <= 1e-9") {
  CHECK(run_criterion(12, "decomposition round trip", "decomposition_roundtrip", 5.0));
}

TEST_CASE("13. source annihilation ratio <= 0.1") {
  CHECK(run_criterion(13, "travelling-wave source annihilation", "source_annihilation", 60.0));
}

TEST_CASE("14. tangent particular solution z = u_x") {
  CHECK(run_criterion(14, "tangent particular solution", "tangent_particular", 30.0));
}

TEST_CASE("15. propagation speed tail <= 1e-4 |delta|") {
  CHECK(run_criterion(15, "propagation-speed tail", "propagation_speed", 60.0));
}

TEST_CASE("16. E-sharp decay at a shock point") {
  CHECK(run_criterion(16, "viscosity-solution estimate", "viscosity_solution", 120.0));
}

TEST_CASE("17. asymptotic convergence to the Riemann fan") {
  CHECK(run_criterion(17, "large-time asymptotics", "asymptotics", 180.0));
}

TEST_CASE("18. perturbation bound, linear in delta") {
  CHECK(run_criterion(18, "system perturbation bound", "perturbation_bound", 120.0));
}
