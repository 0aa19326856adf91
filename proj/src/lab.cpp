#include "vvhyp/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vvhyp {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos)
      line = line.substr(0, pos);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    require(eq != std::string::npos, ErrorCode::InvalidArgument,
            "config line " + std::to_string(lineno) + " is not key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    require(!key.empty(), ErrorCode::InvalidArgument,
            "empty config key on line " + std::to_string(lineno));
    cfg.kv_[key] = value;
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::str(const std::string& key,
                        const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::num(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (...) {
    fail(ErrorCode::InvalidArgument, "config key '" + key + "' is not a number");
  }
}

int Config::integer(const std::string& key, int fallback) const {
  return static_cast<int>(num(key, fallback));
}

bool Config::flag(const std::string& key, bool fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string& v = it->second;
  return v == "1" || v == "true" || v == "yes" || v == "on";
}

std::vector<double> Config::list(const std::string& key,
                                 const std::vector<double>& fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::vector<double> out;
  std::istringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

void Config::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : kv_) out += k + "=" + v + "\n";
  return out;
}

uint64_t Config::hash() const {
  // FNV-1a
  uint64_t h = 1469598103934665603ull;
  for (char c : canonical()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

void Report::add_metric(const std::string& name, double value) {
  metrics.emplace_back(name, value);
}

void Report::check_le(const std::string& name, double metric,
                      double threshold) {
  Verdict v;
  v.check = name;
  v.metric = metric;
  v.threshold = threshold;
  v.relation = "<=";
  v.pass = metric <= threshold;
  v.margin = threshold - metric;
  verdicts.push_back(v);
}

void Report::check_ge(const std::string& name, double metric,
                      double threshold) {
  Verdict v;
  v.check = name;
  v.metric = metric;
  v.threshold = threshold;
  v.relation = ">=";
  v.pass = metric >= threshold;
  v.margin = metric - threshold;
  verdicts.push_back(v);
}

void Report::check_true(const std::string& name, bool ok) {
  Verdict v;
  v.check = name;
  v.metric = ok ? 1.0 : 0.0;
  v.threshold = 1.0;
  v.relation = "true";
  v.pass = ok;
  v.margin = 0.0;
  verdicts.push_back(v);
}

bool Report::pass() const {
  for (const Verdict& v : verdicts)
    if (!v.pass) return false;
  return true;
}

void Report::write_csv(const std::string& path) const {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  require(fp != nullptr, ErrorCode::IoError, "cannot open " + path);
  std::fprintf(fp, "type,name,value,threshold,relation,pass,margin\n");
  std::fprintf(fp, "provenance,config_hash,%llu,,,,\n",
               static_cast<unsigned long long>(config_hash));
  std::fprintf(fp, "provenance,seed,%llu,,,,\n",
               static_cast<unsigned long long>(seed));
  for (const auto& [k, v] : metrics)
    std::fprintf(fp, "metric,%s,%.12e,,,,\n", k.c_str(), v);
  for (const Verdict& v : verdicts)
    std::fprintf(fp, "verdict,%s,%.12e,%.12e,%s,%d,%.12e\n", v.check.c_str(),
                 v.metric, v.threshold, v.relation.c_str(), v.pass ? 1 : 0,
                 v.margin);
  std::fclose(fp);
}

Report run_check(const std::string& name, const Config& cfg) {
  for (const CheckEntry& e : all_checks())
    if (e.name == name) {
      Report rep = e.fn(cfg);
      rep.config_hash = cfg.hash();
      rep.seed = static_cast<uint64_t>(cfg.num("seed", 20240515));
      return rep;
    }
  fail(ErrorCode::InvalidArgument, "no check named '" + name + "'");
}

void write_manifest(const std::string& path, const Config& cfg,
                    const std::vector<Report>& reports, double wall_seconds) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  require(fp != nullptr, ErrorCode::IoError, "cannot open " + path);
  std::fprintf(fp, "vvhyp_version = 0.1.0\n");
  std::fprintf(fp, "config_hash = %llu\n",
               static_cast<unsigned long long>(cfg.hash()));
  std::fprintf(fp, "wall_seconds = %.3f\n", wall_seconds);
  bool all = true;
  for (const Report& r : reports) all = all && r.pass();
  std::fprintf(fp, "pass = %d\n", all ? 1 : 0);
  for (const Report& r : reports)
    std::fprintf(fp, "report.%s = %s\n", r.experiment.c_str(),
                 r.pass() ? "pass" : "FAIL");
  std::fprintf(fp, "# --- config echo ---\n%s", cfg.canonical().c_str());
  std::fclose(fp);
}

}  // namespace vvhyp
