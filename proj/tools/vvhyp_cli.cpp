// Command-line front end; talks to the core only through the C API.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vvhyp.h"

namespace {

struct KvConfig {
  std::map<std::string, std::string> kv;
  std::string text;

  static std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  }

  static KvConfig from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("cannot read config " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    KvConfig cfg;
    cfg.text = ss.str();
    std::istringstream lines(cfg.text);
    std::string line;
    while (std::getline(lines, line)) {
      if (auto pos = line.find('#'); pos != std::string::npos)
        line = line.substr(0, pos);
      line = trim(line);
      if (line.empty()) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("config line is not key=value: " + line);
      cfg.kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return cfg;
  }

  std::string str(const std::string& key, const std::string& fb) const {
    auto it = kv.find(key);
    return it == kv.end() ? fb : it->second;
  }
  double num(const std::string& key, double fb) const {
    auto it = kv.find(key);
    return it == kv.end() ? fb : std::stod(it->second);
  }
  std::vector<double> list(const std::string& key,
                           const std::vector<double>& fb) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fb;
    std::vector<double> out;
    std::istringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trim(item).empty()) out.push_back(std::stod(item));
    return out;
  }
};

std::vector<double> parse_state(const std::string& text) {
  std::vector<double> out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!KvConfig::trim(item).empty()) out.push_back(std::stod(item));
  return out;
}

void die(vvh_status st, const std::string& what) {
  if (st == VVH_OK) return;
  std::fprintf(stderr, "error: %s: %s\n", what.c_str(), vvh_last_error());
  std::exit(1);
}

struct ModelHandle {
  vvh_model* m = nullptr;
  ~ModelHandle() { vvh_model_close(m); }
};
struct TrajHandle {
  vvh_traj* t = nullptr;
  ~TrajHandle() { vvh_traj_free(t); }
};
struct FanHandle {
  vvh_fan* f = nullptr;
  ~FanHandle() { vvh_fan_free(f); }
};

// Builds the initial data named by the config (riemann | gaussian | tanh).
std::vector<double> build_initial(const KvConfig& cfg, vvh_model* model,
                                  double x0, double dx, int cells) {
  const int n = vvh_model_dim(model);
  std::vector<double> u0(static_cast<size_t>(cells) * n, 0.0);
  std::vector<double> base(n, 0.0);
  double radius = 0.0;
  die(vvh_model_ref_state(model, base.data(), &radius), "ref_state");
  {
    std::vector<double> b = cfg.list("base_state", base);
    if (static_cast<int>(b.size()) == n) base = b;
  }
  const std::string kind = cfg.str("initial", "riemann");
  if (kind == "riemann") {
    std::vector<double> ul = cfg.list("ul", std::vector<double>(n, 1.0));
    std::vector<double> ur = cfg.list("ur", std::vector<double>(n, 0.0));
    const double xj = cfg.num("x_jump", 0.0);
    for (int j = 0; j < cells; ++j) {
      const double x = x0 + (j + 0.5) * dx;
      for (int k = 0; k < n; ++k)
        u0[static_cast<size_t>(j) * n + k] = (x < xj ? ul[k] : ur[k]);
    }
    return u0;
  }
  // characteristic direction for the bump shapes
  std::vector<double> lambdas(n), R(static_cast<size_t>(n) * n);
  die(vvh_model_spectrum(model, base.data(), lambdas.data(), R.data(),
                         nullptr),
      "spectrum");
  const int family = static_cast<int>(cfg.num("family", 1)) - 1;
  if (family < 0 || family >= n) {
    std::fprintf(stderr, "error: family out of range\n");
    std::exit(1);
  }
  const double amp = cfg.num("amplitude", 0.1);
  const double center = cfg.num("center", 0.0);
  const double width = cfg.num("width", 0.5);
  for (int j = 0; j < cells; ++j) {
    const double x = x0 + (j + 0.5) * dx;
    double shape;
    if (kind == "gaussian") {
      const double s = (x - center) / width;
      shape = std::exp(-s * s);
    } else if (kind == "tanh") {
      shape = std::tanh((x - center) / width);
    } else {
      std::fprintf(stderr, "error: unknown initial '%s'\n", kind.c_str());
      std::exit(1);
    }
    for (int k = 0; k < n; ++k)
      u0[static_cast<size_t>(j) * n + k] =
          base[k] + amp * shape * R[static_cast<size_t>(family) * n + k];
  }
  return u0;
}

TrajHandle run_solve(const KvConfig& cfg, vvh_model* model) {
  const double x0 = cfg.num("x0", -4.0);
  const double x1 = cfg.num("x1", 4.0);
  const double dx = cfg.num("dx", 0.02);
  const int cells = std::max(8, static_cast<int>(std::lround((x1 - x0) / dx)));
  std::vector<double> u0 = build_initial(cfg, model, x0, dx, cells);

  vvh_solve_opts opts{};
  opts.epsilon = cfg.num("epsilon", 0.1);
  opts.t_end = cfg.num("t_end", 1.0);
  opts.cfl_adv = cfg.num("cfl_adv", 0.0);
  opts.cfl_diff = cfg.num("cfl_diff", 0.0);
  opts.dt_max = cfg.num("dt_max", 0.0);
  std::vector<double> snaps = cfg.list("snapshots", {});
  if (!snaps.empty()) {
    opts.snapshots = snaps.data();
    opts.snapshot_count = static_cast<int>(snaps.size());
  }
  TrajHandle traj;
  die(vvh_solve(model, x0, dx, cells, u0.data(), &opts, &traj.t), "solve");
  return traj;
}

int cmd_solve(const std::string& config_path, const std::string& out) {
  KvConfig cfg = KvConfig::from_file(config_path);
  ModelHandle model;
  die(vvh_model_open(cfg.str("model", "burgers").c_str(), &model.m),
      "model_open");
  TrajHandle traj = run_solve(cfg, model.m);
  die(vvh_traj_write_csv(traj.t, out.c_str()), "write_csv");
  std::printf("wrote %s (%d snapshots, %d cells)\n", out.c_str(),
              vvh_traj_snapshots(traj.t), vvh_traj_cells(traj.t));
  return 0;
}

int cmd_riemann(const std::string& model_name, const std::string& ul_text,
                const std::string& ur_text, int nodes, double t,
                const std::string& out, const std::string& profile_out) {
  ModelHandle model;
  die(vvh_model_open(model_name.c_str(), &model.m), "model_open");
  const int n = vvh_model_dim(model.m);
  std::vector<double> ul = parse_state(ul_text);
  std::vector<double> ur = parse_state(ur_text);
  if (static_cast<int>(ul.size()) != n || static_cast<int>(ur.size()) != n) {
    std::fprintf(stderr, "error: states need %d components\n", n);
    return 2;
  }
  FanHandle fan;
  die(vvh_riemann(model.m, ul.data(), ur.data(), nodes, &fan.f), "riemann");
  die(vvh_fan_write_csv(fan.f, out.c_str()), "write_csv");
  std::printf("wrote %s\n", out.c_str());
  if (!profile_out.empty()) {
    // sampled profile u(x/t) on a window scaled by t
    double lambdas[4];
    die(vvh_model_eigenvalues(model.m, ul.data(), lambdas), "eigenvalues");
    double span = std::max(std::abs(lambdas[0]), std::abs(lambdas[n - 1]));
    die(vvh_model_eigenvalues(model.m, ur.data(), lambdas), "eigenvalues");
    span = std::max(span,
                    std::max(std::abs(lambdas[0]), std::abs(lambdas[n - 1])));
    span = (span + 1.0) * std::max(t, 1e-9);
    die(vvh_fan_write_profile_csv(fan.f, -span, span, 1001,
                                  profile_out.c_str()),
        "write_profile_csv");
    std::printf("wrote %s\n", profile_out.c_str());
  }
  return 0;
}

int cmd_decompose(const std::string& config_path, const std::string& out) {
  KvConfig cfg = KvConfig::from_file(config_path);
  ModelHandle model;
  die(vvh_model_open(cfg.str("model", "burgers").c_str(), &model.m),
      "model_open");
  TrajHandle traj = run_solve(cfg, model.m);
  const int last = vvh_traj_snapshots(traj.t) - 1;
  die(vvh_decompose_csv(model.m, traj.t, last, cfg.num("epsilon", 0.1),
                        out.c_str()),
      "decompose");
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_functionals(const std::string& config_path, const std::string& out) {
  KvConfig cfg = KvConfig::from_file(config_path);
  ModelHandle model;
  die(vvh_model_open(cfg.str("model", "burgers").c_str(), &model.m),
      "model_open");
  TrajHandle traj = run_solve(cfg, model.m);
  die(vvh_functionals_csv(model.m, traj.t, cfg.num("epsilon", 0.1),
                          out.c_str()),
      "functionals");
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_verify(const std::string& which, const std::string& config_path,
               const std::string& outdir, bool quick) {
  std::string config_text;
  if (!config_path.empty()) {
    KvConfig cfg = KvConfig::from_file(config_path);
    config_text = cfg.text;
  }
  std::vector<std::string> names;
  if (which == "all") {
    char buf[4096];
    die(vvh_check_names(buf, sizeof buf), "check_names");
    std::istringstream ss(buf);
    std::string line;
    while (std::getline(ss, line))
      if (!line.empty()) names.push_back(line);
  } else {
    names.push_back(which);
  }

  const auto t0 = std::chrono::steady_clock::now();
  bool all_pass = true;
  std::vector<std::pair<std::string, bool>> results;
  for (const std::string& name : names) {
    int passed = 0;
    vvh_status st =
        vvh_check_run(name.c_str(), config_text.c_str(),
                      outdir.empty() ? nullptr : outdir.c_str(), quick ? 1 : 0,
                      &passed);
    if (st != VVH_OK) {
      std::fprintf(stderr, "error: check %s: %s\n", name.c_str(),
                   vvh_last_error());
      return (st == VVH_ERR_INVALID || st == VVH_ERR_UNKNOWN_MODEL) ? 2 : 1;
    }
    std::printf("[%s] %s\n", passed ? "PASS" : "FAIL", name.c_str());
    std::fflush(stdout);
    results.emplace_back(name, passed != 0);
    all_pass = all_pass && passed;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  if (!outdir.empty()) {
    std::string path = outdir + "/manifest.txt";
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (fp) {
      std::fprintf(fp, "vvhyp_version = %s\n", vvh_version());
      std::fprintf(fp, "quick = %d\n", quick ? 1 : 0);
      std::fprintf(fp, "wall_seconds = %.3f\n", wall);
      std::fprintf(fp, "pass = %d\n", all_pass ? 1 : 0);
      for (const auto& [name, ok] : results)
        std::fprintf(fp, "check.%s = %s\n", name.c_str(), ok ? "pass" : "FAIL");
      std::fprintf(fp, "# --- config echo ---\n%s", config_text.c_str());
      std::fclose(fp);
    }
  }
  std::printf("%s (%zu checks, %.1f s)\n", all_pass ? "ALL PASS" : "FAILURES",
              results.size(), wall);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vvhyp: vanishing-viscosity solvers and diagnostics for 1-D "
               "strictly hyperbolic systems"};
  app.require_subcommand(1);

  std::string config_path, out, profile_out, model_name, ul_text, ur_text;
  std::string verify_name = "all", outdir;
  int nodes = 400;
  double t_sample = 1.0;
  bool quick = false;

  CLI::App* solve = app.add_subcommand("solve", "run the viscous solver");
  solve->add_option("--config", config_path, "key=value config file")
      ->required();
  solve->add_option("--out", out, "trajectory CSV")->default_val("traj.csv");

  CLI::App* riemann =
      app.add_subcommand("riemann", "solve a Riemann problem");
  riemann->add_option("--model", model_name, "model name")->required();
  riemann->add_option("--ul", ul_text, "left state (comma-separated)")
      ->required();
  riemann->add_option("--ur", ur_text, "right state (comma-separated)")
      ->required();
  riemann->add_option("--nodes", nodes, "curve nodes M");
  riemann->add_option("--t", t_sample, "time for the sampled profile");
  riemann->add_option("--out", out, "fan CSV")->default_val("fan.csv");
  riemann->add_option("--profile-out", profile_out, "sampled profile CSV")
      ->default_val("fan_profile.csv");

  CLI::App* decompose = app.add_subcommand(
      "decompose", "travelling-wave decomposition of a snapshot");
  decompose->add_option("--config", config_path, "key=value config file")
      ->required();
  decompose->add_option("--out", out, "decomposition CSV")
      ->default_val("decomposition.csv");

  CLI::App* functionals = app.add_subcommand(
      "functionals", "Lyapunov functional time series of a scalar run");
  functionals->add_option("--config", config_path, "key=value config file")
      ->required();
  functionals->add_option("--out", out, "series CSV")
      ->default_val("functionals.csv");

  CLI::App* verify =
      app.add_subcommand("verify", "run verification experiments");
  verify->add_option("name", verify_name, "check name or 'all'");
  verify->add_option("--config", config_path, "key=value config file");
  verify->add_option("--outdir", outdir, "directory for report CSVs");
  verify->add_flag("--quick", quick, "reduced grids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(config_path, out);
    if (riemann->parsed())
      return cmd_riemann(model_name, ul_text, ur_text, nodes, t_sample, out,
                         profile_out);
    if (decompose->parsed()) return cmd_decompose(config_path, out);
    if (functionals->parsed()) return cmd_functionals(config_path, out);
    if (verify->parsed())
      return cmd_verify(verify_name, config_path, outdir, quick);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
