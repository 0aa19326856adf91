#include "vvhyp.h"

#include <cstring>
#include <string>

#include "vvhyp/functionals.hpp"
#include "vvhyp/lab.hpp"
#include "vvhyp/riemann.hpp"
#include "vvhyp/viscous.hpp"
#include "vvhyp/waves.hpp"

using namespace vvhyp;

struct vvh_model {
  SystemModel impl;
};
struct vvh_traj {
  Trajectory impl;
  int dim;
};
struct vvh_fan {
  WaveFan impl;
};

namespace {

thread_local std::string g_last_error;

vvh_status to_status(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnknownModel:
      return VVH_ERR_UNKNOWN_MODEL;
    case ErrorCode::NotStrictlyHyperbolic:
      return VVH_ERR_NOT_HYPERBOLIC;
    case ErrorCode::BlowUp:
    case ErrorCode::StepUnderflow:
    case ErrorCode::Divergence:
      return VVH_ERR_BLOWUP;
    case ErrorCode::NonConvergence:
    case ErrorCode::NewtonStall:
      return VVH_ERR_NO_CONVERGENCE;
    case ErrorCode::NonpositiveTime:
    case ErrorCode::NonpositiveGap:
    case ErrorCode::NotScalar:
    case ErrorCode::NoFlux:
    case ErrorCode::EmptyTriangle:
    case ErrorCode::LeftBall:
    case ErrorCode::SpeedOverlap:
      return VVH_ERR_DOMAIN;
    case ErrorCode::IoError:
      return VVH_ERR_IO;
    default:
      return VVH_ERR_INVALID;
  }
}

template <typename F>
vvh_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return VVH_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return VVH_ERR_FAIL;
  } catch (...) {
    g_last_error = "unknown error";
    return VVH_ERR_FAIL;
  }
}

Vec vec_from(const double* p, int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = p[i];
  return v;
}

SolveConfig solve_config_from(const vvh_solve_opts* opts) {
  require(opts != nullptr, ErrorCode::InvalidArgument, "opts is NULL");
  SolveConfig sc;
  sc.epsilon = opts->epsilon;
  sc.t_end = opts->t_end;
  if (opts->cfl_adv > 0.0) sc.cfl_adv = opts->cfl_adv;
  if (opts->cfl_diff > 0.0) sc.cfl_diff = opts->cfl_diff;
  if (opts->dt_max > 0.0) sc.dt_max = opts->dt_max;
  if (opts->snapshots != nullptr && opts->snapshot_count > 0)
    sc.snapshot_times.assign(opts->snapshots,
                             opts->snapshots + opts->snapshot_count);
  return sc;
}

}  // namespace

extern "C" {

const char* vvh_version(void) { return "0.1.0"; }

const char* vvh_last_error(void) { return g_last_error.c_str(); }

vvh_status vvh_model_open(const char* spec, vvh_model** out) {
  return guarded([&] {
    require(spec && out, ErrorCode::InvalidArgument, "NULL argument");
    *out = new vvh_model{lookup_model(spec)};
  });
}

void vvh_model_close(vvh_model* m) { delete m; }

int vvh_model_dim(const vvh_model* m) { return m ? m->impl.n : 0; }

int vvh_model_has_flux(const vvh_model* m) {
  return (m && m->impl.has_flux()) ? 1 : 0;
}

vvh_status vvh_model_eigenvalues(const vvh_model* m, const double* u,
                                 double* lambdas) {
  return guarded([&] {
    require(m && u && lambdas, ErrorCode::InvalidArgument, "NULL argument");
    Spectrum sp = spectrum(m->impl, vec_from(u, m->impl.n));
    for (int i = 0; i < m->impl.n; ++i) lambdas[i] = sp.lambdas[i];
  });
}

vvh_status vvh_model_spectrum(const vvh_model* m, const double* u,
                              double* lambdas, double* R, double* L) {
  return guarded([&] {
    require(m && u && lambdas, ErrorCode::InvalidArgument, "NULL argument");
    const int n = m->impl.n;
    Spectrum sp = spectrum(m->impl, vec_from(u, n));
    for (int i = 0; i < n; ++i) lambdas[i] = sp.lambdas[i];
    if (R)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) R[j * n + i] = sp.R(i, j);
    if (L)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) L[i * n + j] = sp.L(i, j);
  });
}

vvh_status vvh_model_flux(const vvh_model* m, const double* u, double* f) {
  return guarded([&] {
    require(m && u && f, ErrorCode::InvalidArgument, "NULL argument");
    Vec fx = m->impl.eval_flux(vec_from(u, m->impl.n));
    for (int i = 0; i < m->impl.n; ++i) f[i] = fx[i];
  });
}

vvh_status vvh_model_ref_state(const vvh_model* m, double* u_star,
                               double* radius) {
  return guarded([&] {
    require(m, ErrorCode::InvalidArgument, "NULL argument");
    if (u_star)
      for (int i = 0; i < m->impl.n; ++i) u_star[i] = m->impl.u_star[i];
    if (radius) *radius = m->impl.radius;
  });
}

vvh_status vvh_solve(const vvh_model* m, double x0, double dx, int cells,
                     const double* u0, const vvh_solve_opts* opts,
                     vvh_traj** out) {
  return guarded([&] {
    require(m && u0 && out, ErrorCode::InvalidArgument, "NULL argument");
    Grid1D g{x0, dx, cells};
    Field f(g, m->impl.n, 0.0);
    f.values.assign(u0, u0 + static_cast<size_t>(cells) * m->impl.n);
    *out = new vvh_traj{solve(m->impl, f, solve_config_from(opts)),
                        m->impl.n};
  });
}

vvh_status vvh_solve_tangent(const vvh_model* m, const vvh_traj* u_traj,
                             const double* z0, const vvh_solve_opts* opts,
                             vvh_traj** out) {
  return guarded([&] {
    require(m && u_traj && z0 && out, ErrorCode::InvalidArgument,
            "NULL argument");
    require(!u_traj->impl.empty(), ErrorCode::InvalidArgument,
            "empty trajectory");
    const Field& first = u_traj->impl.front();
    Field z(first.grid, m->impl.n, first.t);
    z.values.assign(z0, z0 + z.values.size());
    *out = new vvh_traj{
        solve_tangent(m->impl, u_traj->impl, z, solve_config_from(opts)),
        m->impl.n};
  });
}

void vvh_traj_free(vvh_traj* t) { delete t; }

int vvh_traj_snapshots(const vvh_traj* t) {
  return t ? static_cast<int>(t->impl.size()) : 0;
}

int vvh_traj_cells(const vvh_traj* t) {
  return (t && !t->impl.empty()) ? t->impl.front().grid.m : 0;
}

double vvh_traj_time(const vvh_traj* t, int snapshot) {
  if (!t || snapshot < 0 || snapshot >= static_cast<int>(t->impl.size()))
    return 0.0;
  return t->impl[snapshot].t;
}

vvh_status vvh_traj_data(const vvh_traj* t, int snapshot, double* out) {
  return guarded([&] {
    require(t && out, ErrorCode::InvalidArgument, "NULL argument");
    require(snapshot >= 0 && snapshot < static_cast<int>(t->impl.size()),
            ErrorCode::InvalidArgument, "snapshot index");
    const Field& f = t->impl[snapshot];
    std::memcpy(out, f.values.data(), f.values.size() * sizeof(double));
  });
}

vvh_status vvh_traj_write_csv(const vvh_traj* t, const char* path) {
  return guarded([&] {
    require(t && path, ErrorCode::InvalidArgument, "NULL argument");
    write_trajectory_csv(t->impl, path);
  });
}

vvh_status vvh_decompose_csv(const vvh_model* m, const vvh_traj* t,
                             int snapshot, double epsilon, const char* path) {
  return guarded([&] {
    require(m && t && path, ErrorCode::InvalidArgument, "NULL argument");
    require(snapshot >= 0 && snapshot < static_cast<int>(t->impl.size()),
            ErrorCode::InvalidArgument, "snapshot index");
    WaveParams wp;
    Decomposition d =
        decompose_field(m->impl, t->impl[snapshot], epsilon, wp);
    write_decomposition_csv(d, path);
  });
}

vvh_status vvh_functionals_csv(const vvh_model* m, const vvh_traj* t,
                               double epsilon, const char* path) {
  return guarded([&] {
    require(m && t && path, ErrorCode::InvalidArgument, "NULL argument");
    require(m->impl.n == 1, ErrorCode::NotScalar,
            "functional series needs a scalar model");
    std::vector<FunctionalSample> series;
    for (const Field& f : t->impl) {
      Field ux = diff1(f);
      Field uxx = diff2(f);
      ScalarProfile v = component_profile(ux, 0);
      ScalarProfile w = v;
      for (int j = 0; j < f.grid.m; ++j) {
        const double a = m->impl.A(f.state(j))(0, 0);
        const double ut = epsilon * uxx.values[j] - a * ux.values[j];
        w.values[j] = -ut;
      }
      series.push_back(functional_sample(f.t, v, w));
    }
    write_functional_series_csv(series, path);
  });
}

vvh_status vvh_riemann(const vvh_model* m, const double* u_left,
                       const double* u_right, int nodes, vvh_fan** out) {
  return guarded([&] {
    require(m && u_left && u_right && out, ErrorCode::InvalidArgument,
            "NULL argument");
    RiemannParams rp;
    if (nodes > 0) rp.nodes = nodes;
    if (m->impl.n == 1) {
      // scalar curves are global
      rp.s_max = 1e3;
      rp.eps_gamma = 1e3;
    }
    *out = new vvh_fan{solve_riemann(m->impl, vec_from(u_left, m->impl.n),
                                     vec_from(u_right, m->impl.n), rp)};
  });
}

void vvh_fan_free(vvh_fan* f) { delete f; }

vvh_status vvh_fan_sample(const vvh_fan* f, double xi, double* u) {
  return guarded([&] {
    require(f && u, ErrorCode::InvalidArgument, "NULL argument");
    Vec s = sample_fan(f->impl, xi);
    for (int i = 0; i < s.n; ++i) u[i] = s[i];
  });
}

vvh_status vvh_fan_strengths(const vvh_fan* f, double* s) {
  return guarded([&] {
    require(f && s, ErrorCode::InvalidArgument, "NULL argument");
    for (int i = 0; i < f->impl.families(); ++i) s[i] = f->impl.strengths[i];
  });
}

vvh_status vvh_fan_write_csv(const vvh_fan* f, const char* path) {
  return guarded([&] {
    require(f && path, ErrorCode::InvalidArgument, "NULL argument");
    write_fan_csv(f->impl, path);
  });
}

vvh_status vvh_fan_write_profile_csv(const vvh_fan* f, double xi_lo,
                                     double xi_hi, int count,
                                     const char* path) {
  return guarded([&] {
    require(f && path, ErrorCode::InvalidArgument, "NULL argument");
    write_fan_profile_csv(f->impl, xi_lo, xi_hi, count, path);
  });
}

double vvh_total_variation(const double* values, int count) {
  if (!values || count <= 0) return 0.0;
  ScalarProfile p;
  p.grid = Grid1D{0.0, 1.0, count};
  p.values.assign(values, values + count);
  return total_variation(p);
}

vvh_status vvh_interaction_potential(double x0, double dx, int count,
                                     const double* z, const double* zs,
                                     double c, double* out) {
  return guarded([&] {
    require(z && zs && out, ErrorCode::InvalidArgument, "NULL argument");
    Grid1D g{x0, dx, count};
    ScalarProfile pz{g, std::vector<double>(z, z + count)};
    ScalarProfile pzs{g, std::vector<double>(zs, zs + count)};
    *out = interaction_potential(pz, pzs, c);
  });
}

vvh_status vvh_area_functional(double x0, double dx, int count,
                               const double* v, const double* w, double* out) {
  return guarded([&] {
    require(v && w && out, ErrorCode::InvalidArgument, "NULL argument");
    Grid1D g{x0, dx, count};
    ScalarProfile pv{g, std::vector<double>(v, v + count)};
    ScalarProfile pw{g, std::vector<double>(w, w + count)};
    *out = area_functional(pv, pw);
  });
}

vvh_status vvh_length_functional(double x0, double dx, int count,
                                 const double* v, const double* w,
                                 double* out) {
  return guarded([&] {
    require(v && w && out, ErrorCode::InvalidArgument, "NULL argument");
    Grid1D g{x0, dx, count};
    ScalarProfile pv{g, std::vector<double>(v, v + count)};
    ScalarProfile pw{g, std::vector<double>(w, w + count)};
    *out = length_functional(pv, pw);
  });
}

vvh_status vvh_check_names(char* buf, size_t buf_size) {
  return guarded([&] {
    require(buf && buf_size > 0, ErrorCode::InvalidArgument, "NULL buffer");
    std::string names;
    for (const CheckEntry& e : all_checks()) {
      names += e.name;
      names += "\n";
    }
    require(names.size() + 1 <= buf_size, ErrorCode::InvalidArgument,
            "buffer too small");
    std::memcpy(buf, names.c_str(), names.size() + 1);
  });
}

vvh_status vvh_check_run(const char* name, const char* config_text,
                         const char* outdir, int quick, int* passed) {
  return guarded([&] {
    require(name, ErrorCode::InvalidArgument, "NULL name");
    Config cfg = Config::parse(config_text ? config_text : "");
    if (quick) cfg.set("quick", "1");
    Report rep = run_check(name, cfg);
    if (outdir)
      rep.write_csv(std::string(outdir) + "/" + rep.experiment + ".csv");
    if (passed) *passed = rep.pass() ? 1 : 0;
  });
}

}  // extern "C"
