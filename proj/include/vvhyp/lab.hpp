#ifndef VVHYP_LAB_HPP_
#define VVHYP_LAB_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "vvhyp/errors.hpp"

namespace vvhyp {

// Flat key=value configuration ('#' starts a comment). Typed getters fall
// back to the built-in defaults of each experiment, so an empty config runs
// the acceptance-grade setup.
class Config {
 public:
  Config() = default;
  static Config parse(const std::string& text);
  static Config from_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> list(const std::string& key,
                           const std::vector<double>& fallback) const;
  void set(const std::string& key, const std::string& value);

  std::string canonical() const;  // sorted key=value lines
  uint64_t hash() const;          // FNV-1a of the canonical text

 private:
  std::map<std::string, std::string> kv_;
};

struct Verdict {
  std::string check;
  double metric = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=", ">=", "true"
  bool pass = false;
  double margin = 0.0;
};

struct Report {
  std::string experiment;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<Verdict> verdicts;
  uint64_t config_hash = 0;
  uint64_t seed = 0;
  double wall_seconds = 0.0;

  void add_metric(const std::string& name, double value);
  void check_le(const std::string& name, double metric, double threshold);
  void check_ge(const std::string& name, double metric, double threshold);
  void check_true(const std::string& name, bool ok);
  bool pass() const;
  void write_csv(const std::string& path) const;
};

using CheckFn = std::function<Report(const Config&)>;
struct CheckEntry {
  std::string name;
  std::string summary;
  CheckFn fn;
};

// All named verification checks; `verify all` runs every one of them.
const std::vector<CheckEntry>& all_checks();
Report run_check(const std::string& name, const Config& cfg);

// The experiment operations, also registered as checks.
Report exp_vanishing_viscosity(const Config& cfg);
Report exp_l1_stability(const Config& cfg);
Report exp_propagation_speed(const Config& cfg);
Report exp_shock_conditions(const Config& cfg);
Report exp_viscosity_solution_check(const Config& cfg);
Report exp_asymptotics(const Config& cfg);
Report exp_system_perturbation(const Config& cfg);

void write_manifest(const std::string& path, const Config& cfg,
                    const std::vector<Report>& reports, double wall_seconds);

}  // namespace vvhyp

#endif  // VVHYP_LAB_HPP_
