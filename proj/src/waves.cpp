#include "vvhyp/waves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vvhyp/ode.hpp"

namespace vvhyp {

// ---------------------------------------------------------------------------
// cutoff
// ---------------------------------------------------------------------------

namespace {

// Blend profile on delta1 <= |s| <= 3 delta1, written for t = normalized
// position in [0,1]. theta' runs 1 -> -c -> 0 through cubic smoothsteps with
// plateau fraction rho; c is fixed by theta(3 delta1) = 0. |theta'| <= 1.
constexpr double kRho = 0.25;
constexpr double kC = (1.0 + kRho) / (2.0 * (1.0 - kRho));  // 5/6

double smoothstep(double x) { return x * x * (3.0 - 2.0 * x); }
double smoothstep_int(double x) { return x * x * x - 0.5 * x * x * x * x; }

double blend_prime(double t) {
  if (t <= kRho) return 1.0 - (1.0 + kC) * smoothstep(t / kRho);
  if (t <= 1.0 - kRho) return -kC;
  return -kC * (1.0 - smoothstep((t - (1.0 - kRho)) / kRho));
}

double blend_int(double t) {
  if (t <= kRho) return t - (1.0 + kC) * kRho * smoothstep_int(t / kRho);
  const double i_rho = kRho * (1.0 - kC) / 2.0;
  if (t <= 1.0 - kRho) return i_rho - kC * (t - kRho);
  const double i_nu = i_rho - kC * (1.0 - 2.0 * kRho);
  const double s = t - (1.0 - kRho);
  return i_nu - kC * (s - kRho * smoothstep_int(s / kRho));
}

void check_cutoff(const CutoffParams& p) {
  require(p.delta1 > 0.0 && p.delta1 <= 1.0 / 3.0 + 1e-12,
          ErrorCode::InvalidArgument, "delta1 must lie in (0, 1/3]");
}

}  // namespace

double theta(double s, const CutoffParams& params) {
  check_cutoff(params);
  const double d1 = params.delta1;
  const double a = std::abs(s);
  if (a <= d1) return s;
  if (a >= 3.0 * d1) return 0.0;
  const double t = (a - d1) / (2.0 * d1);
  const double val = d1 + 2.0 * d1 * blend_int(t);
  return s >= 0.0 ? val : -val;
}

double theta_prime(double s, const CutoffParams& params) {
  check_cutoff(params);
  const double d1 = params.delta1;
  const double a = std::abs(s);
  if (a <= d1) return 1.0;
  if (a >= 3.0 * d1) return 0.0;
  return blend_prime((a - d1) / (2.0 * d1));  // even function
}

// ---------------------------------------------------------------------------
// center-manifold vectors
// ---------------------------------------------------------------------------

namespace {

// Directional derivative (r_i . r_i)(u) of the eigenvector field, by central
// differences on the sign-fixed spectrum. The probes skip the validity-ball
// check: they move by O(1e-6).
Vec eigenvector_self_derivative(const SystemModel& model, const Vec& u,
                                const Vec& r, int family) {
  const double h = 1e-6 * (1.0 + norm2(u));
  EigenPair ep = eig_real_distinct(model.A(u + h * r), model.gap_tol);
  EigenPair em = eig_real_distinct(model.A(u - h * r), model.gap_tol);
  return (1.0 / (2.0 * h)) * (ep.R.col(family) - em.R.col(family));
}

Vec rho_vector(const Spectrum& sp, const Vec& drr, double sigma_i,
               int family) {
  const int n = sp.lambdas.n;
  Vec rho(n);
  for (int j = 0; j < n; ++j) {
    if (j == family) continue;
    const double denom = sp.lambdas[j] - 2.0 * sp.lambdas[family] + sigma_i;
    if (std::abs(denom) < 1e-6)
      fail(ErrorCode::ResonantDenominator,
           "sigma_i too far from lambda_i: resonance in the rho_i formula");
    rho += (dot(sp.l(j), drr) / denom) * sp.r(j);
  }
  return rho;
}

RTilde rtilde_core(const Mat& A_u, const Spectrum& sp, const Vec& drr,
                   double v_i, double sigma_i, int family) {
  if (v_i == 0.0) return {sp.r(family), sp.lambdas[family]};
  Vec rt = sp.r(family) + v_i * rho_vector(sp, drr, sigma_i, family);
  rt *= 1.0 / norm2(rt);
  return {rt, dot(rt, A_u * rt)};
}

// Shared per-state context for the forward map and its Newton inverse: the
// spectrum, A(u), lambda_i^* and the eigenvector derivatives are all
// independent of (v, w).
class LambdaEvaluator {
 public:
  LambdaEvaluator(const SystemModel& model, const Vec& u,
                  const WaveParams& params)
      : model_(model), params_(params), u_(u), A_u_(model.A(u)),
        sp_(spectrum(model, u)),
        star_(spectrum(model, model.u_star)) {
    for (int i = 0; i < model.n; ++i)
      drr_[i] = eigenvector_self_derivative(model, u, sp_.r(i), i);
  }

  int dim() const { return model_.n; }
  const Spectrum& spec() const { return sp_; }
  double lam_star(int i) const { return star_.lambdas[i]; }

  double sigma_of(int i, double v_i, double w_i) const {
    const double eta = 1e-12 * (1.0 + std::abs(v_i) + std::abs(w_i));
    if (std::abs(v_i) <= eta && std::abs(w_i) <= eta)
      return star_.lambdas[i];
    const double ratio = w_i * v_i / (v_i * v_i + eta * eta);
    return star_.lambdas[i] - theta(ratio, params_.cutoff);
  }

  RTilde family_rtilde(int i, double v_i, double sigma_i) const {
    return rtilde_core(A_u_, sp_, drr_[i], v_i, sigma_i, i);
  }

  Jet eval(const Vec& v, const Vec& w) const {
    const int n = model_.n;
    Jet out{Vec(n), Vec(n)};
    for (int i = 0; i < n; ++i) {
      const double sigma_i = sigma_of(i, v[i], w[i]);
      RTilde rt = family_rtilde(i, v[i], sigma_i);
      out.p += v[i] * rt.r;
      out.q += (w[i] - star_.lambdas[i] * v[i]) * rt.r;
    }
    return out;
  }

 private:
  const SystemModel& model_;
  WaveParams params_;
  Vec u_;
  Mat A_u_;
  Spectrum sp_;
  Spectrum star_;
  std::array<Vec, kMaxDim> drr_;
};

// Dense solver for the 2n x 2n Newton systems (size <= 8).
void solve_dense(int k, std::array<double, 64>& a, std::array<double, 8>& b) {
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int i = col + 1; i < k; ++i)
      if (std::abs(a[i * k + col]) > std::abs(a[piv * k + col])) piv = i;
    if (a[piv * k + col] == 0.0)
      fail(ErrorCode::NewtonStall, "singular Newton Jacobian");
    if (piv != col) {
      for (int j = 0; j < k; ++j) std::swap(a[col * k + j], a[piv * k + j]);
      std::swap(b[col], b[piv]);
    }
    for (int i = col + 1; i < k; ++i) {
      const double f = a[i * k + col] / a[col * k + col];
      if (f == 0.0) continue;
      for (int j = col; j < k; ++j) a[i * k + j] -= f * a[col * k + j];
      b[i] -= f * b[col];
    }
  }
  for (int i = k - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < k; ++j) s -= a[i * k + j] * b[j];
    b[i] = s / a[i * k + i];
  }
}

JetComponents decompose_jet_with(const LambdaEvaluator& ev, const Vec& u_x,
                                 const Vec& u_t, const WaveParams& params) {
  const int n = ev.dim();
  const int k = 2 * n;

  // B_0 initial guess: v_i = l_i . u_x, w_i = l_i . u_t + lambda_i^* v_i
  std::array<double, 8> x{};
  for (int i = 0; i < n; ++i) {
    x[i] = dot(ev.spec().l(i), u_x);
    x[n + i] = dot(ev.spec().l(i), u_t) + ev.lam_star(i) * x[i];
  }

  auto residual = [&](const std::array<double, 8>& z,
                      std::array<double, 8>& out) {
    Vec v(n), w(n);
    for (int i = 0; i < n; ++i) {
      v[i] = z[i];
      w[i] = z[n + i];
    }
    Jet jet = ev.eval(v, w);
    for (int i = 0; i < n; ++i) {
      out[i] = jet.p[i] - u_x[i];
      out[n + i] = jet.q[i] - u_t[i];
    }
  };

  auto max_abs = [&](const std::array<double, 8>& z) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) s = std::max(s, std::abs(z[i]));
    return s;
  };

  std::array<double, 8> f{}, f_try{}, step{}, x_try{};
  std::array<double, 64> jac{};
  residual(x, f);
  double fn = max_abs(f);
  for (int iter = 0; iter < params.newton_max_iter; ++iter) {
    if (fn <= params.newton_tol) {
      JetComponents out{Vec(n), Vec(n)};
      for (int i = 0; i < n; ++i) {
        out.v[i] = x[i];
        out.w[i] = x[n + i];
      }
      return out;
    }
    const double h = params.fd_step;
    for (int col = 0; col < k; ++col) {
      std::array<double, 8> xp = x;
      xp[col] += h;
      residual(xp, f_try);
      for (int row = 0; row < k; ++row)
        jac[row * k + col] = (f_try[row] - f[row]) / h;
    }
    for (int i = 0; i < k; ++i) step[i] = -f[i];
    solve_dense(k, jac, step);
    double alpha = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 8; ++halving) {
      for (int i = 0; i < k; ++i) x_try[i] = x[i] + alpha * step[i];
      residual(x_try, f_try);
      const double fn_try = max_abs(f_try);
      if (fn_try < fn) {
        x = x_try;
        f = f_try;
        fn = fn_try;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
  }
  if (fn <= params.newton_tol) {
    JetComponents out{Vec(n), Vec(n)};
    for (int i = 0; i < n; ++i) {
      out.v[i] = x[i];
      out.w[i] = x[n + i];
    }
    return out;
  }
  fail(ErrorCode::NewtonStall,
       "decompose_jet residual " + std::to_string(fn) + " after " +
           std::to_string(params.newton_max_iter) + " iterations");
}

}  // namespace

RTilde rtilde_at(const SystemModel& model, const Spectrum& sp, const Vec& u,
                 double v_i, double sigma_i, int family) {
  require(family >= 0 && family < model.n, ErrorCode::InvalidArgument,
          "family index");
  if (v_i == 0.0) return {sp.r(family), sp.lambdas[family]};
  Vec drr = eigenvector_self_derivative(model, u, sp.r(family), family);
  return rtilde_core(model.A(u), sp, drr, v_i, sigma_i, family);
}

RTilde rtilde(const SystemModel& model, const Vec& u, double v_i,
              double sigma_i, int family) {
  Spectrum sp = spectrum(model, u);
  return rtilde_at(model, sp, u, v_i, sigma_i, family);
}

Jet lambda_forward(const SystemModel& model, const Vec& u, const Vec& v,
                   const Vec& w, const WaveParams& params) {
  LambdaEvaluator ev(model, u, params);
  return ev.eval(v, w);
}

JetComponents decompose_jet(const SystemModel& model, const Vec& u,
                            const Vec& u_x, const Vec& u_t,
                            const WaveParams& params) {
  require(norm2(u_x) <= params.jet_bound && norm2(u_t) <= params.jet_bound,
          ErrorCode::InvalidArgument, "jet exceeds jet_bound");
  LambdaEvaluator ev(model, u, params);
  return decompose_jet_with(ev, u_x, u_t, params);
}

Decomposition decompose_field(const SystemModel& model, const Field& snapshot,
                              double epsilon, const WaveParams& params) {
  require(epsilon > 0.0, ErrorCode::InvalidArgument, "epsilon > 0");
  const int n = model.n;
  const int m = snapshot.grid.m;
  Decomposition out;
  out.grid = snapshot.grid;
  out.n = n;
  out.v.assign(static_cast<size_t>(m) * n, 0.0);
  out.w.assign(static_cast<size_t>(m) * n, 0.0);
  out.sigma.assign(static_cast<size_t>(m) * n, 0.0);
  out.lambda_tilde.assign(static_cast<size_t>(m) * n, 0.0);
  out.r_tilde.assign(static_cast<size_t>(m) * n * n, 0.0);

  Field ux = diff1(snapshot);
  Field uxx = diff2(snapshot);
  for (int j = 0; j < m; ++j) {
    Vec u = snapshot.state(j);
    Vec p = epsilon * ux.state(j);
    Vec ut_phys = epsilon * uxx.state(j) - model.A(u) * ux.state(j);
    Vec q = epsilon * ut_phys;
    LambdaEvaluator ev(model, u, params);
    JetComponents c;
    try {
      c = decompose_jet_with(ev, p, q, params);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NewtonStall)
        fail(ErrorCode::NewtonStall,
             std::string(e.what()) + " (cell " + std::to_string(j) + ")");
      throw;
    }
    for (int i = 0; i < n; ++i) {
      const double sigma_i = ev.sigma_of(i, c.v[i], c.w[i]);
      RTilde rt = ev.family_rtilde(i, c.v[i], sigma_i);
      out.at(out.v, j, i) = c.v[i];
      out.at(out.w, j, i) = c.w[i];
      out.at(out.sigma, j, i) = sigma_i;
      out.at(out.lambda_tilde, j, i) = rt.lambda;
      for (int kcomp = 0; kcomp < n; ++kcomp)
        out.r_tilde[(static_cast<size_t>(j) * n + i) * n + kcomp] =
            rt.r[kcomp];
    }
  }
  return out;
}

void write_decomposition_csv(const Decomposition& d, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  require(fp != nullptr, ErrorCode::IoError, "cannot open " + path);
  std::fprintf(fp, "x,i,v,w,sigma,lambdatilde\n");
  for (int j = 0; j < d.grid.m; ++j)
    for (int i = 0; i < d.n; ++i)
      std::fprintf(fp, "%.12e,%d,%.12e,%.12e,%.12e,%.12e\n", d.grid.x(j),
                   i + 1, d.get(d.v, j, i), d.get(d.w, j, i),
                   d.get(d.sigma, j, i), d.get(d.lambda_tilde, j, i));
  std::fclose(fp);
}

std::vector<double> eigen_components(const SystemModel& model,
                                     const Field& snapshot) {
  const int n = model.n;
  const int m = snapshot.grid.m;
  std::vector<double> out(static_cast<size_t>(m) * n, 0.0);
  Field ux = diff1(snapshot);
  for (int j = 0; j < m; ++j) {
    Spectrum sp = spectrum(model, snapshot.state(j));
    for (int i = 0; i < n; ++i)
      out[static_cast<size_t>(j) * n + i] = dot(sp.l(i), ux.state(j));
  }
  return out;
}

double SourceResiduals::phi_total() const {
  double s = 0.0;
  for (int i = 0; i < phi_l1.n; ++i) s += phi_l1[i];
  return s;
}
double SourceResiduals::psi_total() const {
  double s = 0.0;
  for (int i = 0; i < psi_l1.n; ++i) s += psi_l1[i];
  return s;
}
double SourceResiduals::eigen_total() const {
  double s = 0.0;
  for (int i = 0; i < eigen_phi_l1.n; ++i) s += eigen_phi_l1[i];
  return s;
}

namespace {

// clamped-ghost first and second differences of a scalar array
double arr_d1(const std::vector<double>& a, int j, int m, int n, int i,
              double dx) {
  const int jl = (j == 0) ? 0 : j - 1;
  const int jr = (j == m - 1) ? m - 1 : j + 1;
  return (a[static_cast<size_t>(jr) * n + i] -
          a[static_cast<size_t>(jl) * n + i]) /
         (2.0 * dx);
}
double arr_d2(const std::vector<double>& a, int j, int m, int n, int i,
              double dx) {
  const int jl = (j == 0) ? 0 : j - 1;
  const int jr = (j == m - 1) ? m - 1 : j + 1;
  return (a[static_cast<size_t>(jr) * n + i] -
          2.0 * a[static_cast<size_t>(j) * n + i] +
          a[static_cast<size_t>(jl) * n + i]) /
         (dx * dx);
}

}  // namespace

SourceResiduals source_residuals(const SystemModel& model, const Field& snap0,
                                 const Field& snap1, const Field& snap2,
                                 double epsilon, const WaveParams& params) {
  require(snap0.grid == snap1.grid && snap1.grid == snap2.grid,
          ErrorCode::GridMismatch, "snapshots on different grids");
  require(snap0.t < snap1.t && snap1.t < snap2.t, ErrorCode::InvalidArgument,
          "snapshots must be time-ordered");
  const int n = model.n;
  const int m = snap1.grid.m;
  const double dX = snap1.grid.dx / epsilon;
  const double dT2 = (snap2.t - snap0.t) / epsilon;  // centered span

  Decomposition d0 = decompose_field(model, snap0, epsilon, params);
  Decomposition d1 = decompose_field(model, snap1, epsilon, params);
  Decomposition d2 = decompose_field(model, snap2, epsilon, params);

  // speed-weighted fluxes at the middle time
  std::vector<double> flux_v(static_cast<size_t>(m) * n),
      flux_w(static_cast<size_t>(m) * n);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) {
      const double lam = d1.get(d1.lambda_tilde, j, i);
      flux_v[static_cast<size_t>(j) * n + i] = lam * d1.get(d1.v, j, i);
      flux_w[static_cast<size_t>(j) * n + i] = lam * d1.get(d1.w, j, i);
    }

  SourceResiduals out{Vec(n), Vec(n), Vec(n)};
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) {
      const double vt = (d2.get(d2.v, j, i) - d0.get(d0.v, j, i)) / dT2;
      const double wt = (d2.get(d2.w, j, i) - d0.get(d0.w, j, i)) / dT2;
      const double phi = vt + arr_d1(flux_v, j, m, n, i, dX) -
                         arr_d2(d1.v, j, m, n, i, dX);
      const double psi = wt + arr_d1(flux_w, j, m, n, i, dX) -
                         arr_d2(d1.w, j, m, n, i, dX);
      out.phi_l1[i] += std::abs(phi) * dX;
      out.psi_l1[i] += std::abs(psi) * dX;
    }

  // eigenvector-decomposition baseline with speeds lambda_i(u)
  auto eigen_scaled = [&](const Field& f) {
    std::vector<double> a = eigen_components(model, f);
    for (double& x : a) x *= epsilon;
    return a;
  };
  std::vector<double> a0 = eigen_scaled(snap0);
  std::vector<double> a1 = eigen_scaled(snap1);
  std::vector<double> a2 = eigen_scaled(snap2);
  std::vector<double> flux_a(static_cast<size_t>(m) * n);
  for (int j = 0; j < m; ++j) {
    Spectrum sp = spectrum(model, snap1.state(j));
    for (int i = 0; i < n; ++i)
      flux_a[static_cast<size_t>(j) * n + i] =
          sp.lambdas[i] * a1[static_cast<size_t>(j) * n + i];
  }
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) {
      const double at = (a2[static_cast<size_t>(j) * n + i] -
                         a0[static_cast<size_t>(j) * n + i]) /
                        dT2;
      const double res = at + arr_d1(flux_a, j, m, n, i, dX) -
                         arr_d2(a1, j, m, n, i, dX);
      out.eigen_phi_l1[i] += std::abs(res) * dX;
    }
  return out;
}

// ---------------------------------------------------------------------------
// travelling profiles
// ---------------------------------------------------------------------------

namespace {

struct HalfProfile {
  std::vector<ProfileSample> samples;  // ordered outward from the midpoint
};

// First-integral right-hand side g(u) = f(u) - sigma u + c.
struct ReducedFlow {
  const SystemModel* model;
  double sigma;
  Vec c;

  Vec operator()(const Vec& u) const {
    return model->eval_flux(u) - sigma * u + c;
  }
  Mat jacobian(const Vec& u) const {
    Mat j = model->A(u);
    for (int i = 0; i < j.n; ++i) j(i, i) -= sigma;
    return j;
  }
};

void check_profile_state(const SystemModel& model, const Vec& u) {
  if (!all_finite(u) || !model.inside_ball(u))
    fail(ErrorCode::Divergence,
         "profile left the validity ball before decaying");
}

OdeRhs reduced_rhs(const ReducedFlow& flow, int n) {
  return [&flow, n](double, const OdeState& y, OdeState& dy) {
    Vec u(n);
    for (int i = 0; i < n; ++i) u[i] = y[i];
    Vec g = flow(u);
    for (int i = 0; i < n; ++i) dy[i] = g[i];
  };
}

// Direct sweep of the reduced flow from u_start in direction dir, sampling
// every h. Stops on decay, span or sample cap; throws on ball exit.
HalfProfile direct_half_reduced(const SystemModel& model,
                                const ReducedFlow& flow, const Vec& u_start,
                                double v_ref, int dir, double span,
                                const ProfileOptions& opts) {
  HalfProfile out;
  const int n = model.n;
  OdeRhs rhs = reduced_rhs(flow, n);
  OdeOptions oopts;
  oopts.rel_tol = opts.ode_tol;
  oopts.h_init = opts.sample_dx / 2.0;
  OdeState y{};
  for (int i = 0; i < n; ++i) y[i] = u_start[i];
  double x = 0.0;
  while (std::abs(x) < span) {
    ode_advance(rhs, n, x, y, x + dir * opts.sample_dx, oopts);
    Vec u(n);
    for (int i = 0; i < n; ++i) u[i] = y[i];
    check_profile_state(model, u);
    Vec du = flow(u);
    out.samples.push_back({x, u, du});
    if (norm2(du) < opts.decay_rel * std::abs(v_ref)) break;
    if (out.samples.size() > opts.max_samples)
      fail(ErrorCode::InvalidArgument, "profile sample cap exceeded");
  }
  return out;
}

// Newton search for an equilibrium of the reduced flow on the dir side of
// u_mid. Returns false if no admissible equilibrium is found.
bool find_equilibrium(const SystemModel& model, const ReducedFlow& flow,
                      const Vec& u_mid, const Vec& r_dir, int dir,
                      double scale, Vec* out) {
  for (double t : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    Vec u = u_mid + (dir * t * scale) * r_dir;
    if (!model.inside_ball(u)) continue;
    bool ok = true;
    for (int it = 0; it < 60; ++it) {
      Vec g = flow(u);
      if (norm2(g) < 1e-14 * (1.0 + norm2(u))) break;
      Vec step = solve_linear(flow.jacobian(u), g);
      u -= step;
      if (!all_finite(u) || norm2(u - u_mid) > 4.0 * model.radius) {
        ok = false;
        break;
      }
      if (it == 59) ok = false;
    }
    if (!ok || !model.inside_ball(u)) continue;
    if (norm2(flow(u)) > 1e-12 * (1.0 + norm2(u))) continue;
    // must sit on the requested side, a genuine distance away
    if (dot(u - u_mid, dir * r_dir) <= 1e-10) continue;
    *out = u;
    return true;
  }
  return false;
}

// Whole profile built from one backward sweep out of a saddle endpoint. The
// sweep leaves u_eq along its slow eigendirection (the only numerically
// reachable way onto the heteroclinic), runs through the midpoint and on to
// the far side, which is attracting for the reversed flow. The along-orbit
// phase is exponentially sensitive near the saddle, so everything happens in
// a single sweep: samples are stored as they come and the x-origin is fixed
// afterwards at the crossing of the plane <l_i(u_mid), u - u_mid> = 0. The
// sample grid stays uniform; the midpoint lands within O(h |v_mid|) of x=0.
std::vector<ProfileSample> saddle_sweep_profile(
    const SystemModel& model, const ReducedFlow& flow, const Vec& u_mid,
    const Vec& l_mid, const Vec& u_eq, int family, double v_ref, int dir,
    double span, const ProfileOptions& opts) {
  const int n = model.n;
  Spectrum sp_eq = spectrum(model, u_eq);
  Vec e = sp_eq.r(family);
  if (dot(u_mid - u_eq, e) < 0.0) e *= -1.0;
  const double rate = std::abs(sp_eq.lambdas[family] - flow.sigma);
  require(rate > 1e-14, ErrorCode::Divergence,
          "degenerate approach rate at the profile endpoint");
  const double delta = 0.5 * opts.decay_rel * std::abs(v_ref) / rate;
  Vec u_start = u_eq + delta * e;

  OdeRhs rhs = reduced_rhs(flow, n);
  OdeOptions oopts;
  oopts.rel_tol = opts.ode_tol;
  oopts.h_init = opts.sample_dx / 2.0;

  auto plane = [&](const Vec& u) { return dot(l_mid, u - u_mid); };

  std::vector<ProfileSample> sweep;  // in sweep coordinates, xi decreasing
  OdeState y{};
  for (int i = 0; i < n; ++i) y[i] = u_start[i];
  double xi = 0.0;
  double prev_val = plane(u_start);
  double prev_xi = 0.0;
  double xi_cross = 0.0;
  bool crossed = false;
  const double h = opts.sample_dx;
  const double step = -dir * h;
  const double decay = opts.decay_rel * std::abs(v_ref);
  while (true) {
    ode_advance(rhs, n, xi, y, xi + step, oopts);
    Vec u(n);
    for (int i = 0; i < n; ++i) u[i] = y[i];
    check_profile_state(model, u);
    sweep.push_back({xi, u, flow(u)});
    const double val = plane(u);
    if (!crossed && (val == 0.0 || val * prev_val < 0.0)) {
      const double w = prev_val / (prev_val - val);
      xi_cross = prev_xi + w * (xi - prev_xi);
      crossed = true;
    }
    prev_val = val;
    prev_xi = xi;
    if (crossed) {
      if (norm2(sweep.back().du) < decay) break;
      if (std::abs(xi - xi_cross) > span) break;
    }
    if (sweep.size() > opts.max_samples)
      fail(ErrorCode::Divergence, "saddle sweep failed to reach the midpoint");
  }

  // relabel to profile coordinates and trim to span / decay on the
  // equilibrium side
  std::vector<ProfileSample> out;
  out.reserve(sweep.size());
  for (const ProfileSample& s : sweep) {
    const double x = s.x - xi_cross;
    if (std::abs(x) > span) continue;
    if ((x * dir > 0.0) && norm2(s.du) < decay) continue;  // saddle tail
    out.push_back({x, s.u, s.du});
  }
  require(!out.empty(), ErrorCode::Divergence, "empty saddle sweep");
  if (dir > 0) std::reverse(out.begin(), out.end());
  return out;
}

struct SideInfo {
  bool has_eq = false;
  bool saddle = false;  // approach-compatible equilibrium with an unstable
                        // transverse mode: direct integration cannot reach it
  Vec u_eq;
};

SideInfo classify_side(const SystemModel& model, const ReducedFlow& flow,
                       const Vec& u_mid, const Vec& leave_dir, int family,
                       double v_mid, int dir) {
  SideInfo info;
  info.u_eq = Vec(model.n);
  const double scale =
      std::max(std::sqrt(2.0 * std::abs(v_mid)), 4.0 * std::abs(v_mid));
  if (!find_equilibrium(model, flow, u_mid, leave_dir, dir, scale,
                        &info.u_eq))
    return info;
  info.has_eq = true;
  Spectrum sp_eq = spectrum(model, info.u_eq);
  const bool approach_ok = (sp_eq.lambdas[family] - flow.sigma) * dir < 0.0;
  if (!approach_ok) return info;
  for (int j = 0; j < model.n; ++j) {
    if (j == family) continue;
    if ((sp_eq.lambdas[j] - flow.sigma) * dir > 0.0) info.saddle = true;
  }
  return info;
}

// Direct shooting of the full second-order system (non-conservative models).
HalfProfile direct_half_full(const SystemModel& model, const Vec& u_mid,
                             const Vec& v0, double sigma, double v_mid,
                             int dir, double span, const ProfileOptions& opts) {
  const int n = model.n;
  OdeRhs rhs = [&model, sigma, n](double, const OdeState& y, OdeState& dy) {
    Vec u(n), v(n);
    for (int i = 0; i < n; ++i) {
      u[i] = y[i];
      v[i] = y[n + i];
    }
    Mat a = model.A(u);
    for (int i = 0; i < n; ++i) a(i, i) -= sigma;
    Vec vv = a * v;
    for (int i = 0; i < n; ++i) {
      dy[i] = v[i];
      dy[n + i] = vv[i];
    }
  };
  OdeOptions oopts;
  oopts.rel_tol = opts.ode_tol;
  oopts.h_init = opts.sample_dx / 2.0;
  OdeState y{};
  for (int i = 0; i < n; ++i) {
    y[i] = u_mid[i];
    y[n + i] = v0[i];
  }
  HalfProfile out;
  double x = 0.0;
  while (std::abs(x) < span) {
    ode_advance(rhs, 2 * n, x, y, x + dir * opts.sample_dx, oopts);
    Vec u(n), du(n);
    for (int i = 0; i < n; ++i) {
      u[i] = y[i];
      du[i] = y[n + i];
    }
    check_profile_state(model, u);
    out.samples.push_back({x, u, du});
    if (norm2(du) < opts.decay_rel * std::abs(v_mid)) break;
    if (out.samples.size() > opts.max_samples)
      fail(ErrorCode::InvalidArgument, "profile sample cap exceeded");
  }
  return out;
}

}  // namespace

TravellingProfile integrate_profile(const SystemModel& model, const Vec& u_mid,
                                    double v_mid, double sigma, int family,
                                    double span, const ProfileOptions& opts) {
  require(family >= 0 && family < model.n, ErrorCode::InvalidArgument,
          "family index");
  require(model.inside_ball(u_mid), ErrorCode::InvalidArgument,
          "u_mid outside the validity ball");
  require(std::abs(v_mid) <= 0.2 * model.radius * (1.0 + 1e-9),
          ErrorCode::InvalidArgument, "|v_mid| too large");
  require(span > 0.0, ErrorCode::InvalidArgument, "span > 0");

  TravellingProfile prof;
  prof.sigma = sigma;
  prof.family = family;

  Spectrum sp_mid = spectrum(model, u_mid);
  Vec v0 = v_mid * sp_mid.r(family);

  if (v_mid == 0.0) {
    for (double x : {-span, 0.0, span})
      prof.samples.push_back({x, u_mid, Vec(model.n)});
    return prof;
  }

  if (model.has_flux()) {
    ReducedFlow flow{&model, sigma,
                     v0 - model.eval_flux(u_mid) + sigma * u_mid};
    Vec leave_dir = (1.0 / norm2(v0)) * v0;
    SideInfo minus =
        classify_side(model, flow, u_mid, leave_dir, family, v_mid, -1);
    SideInfo plus =
        classify_side(model, flow, u_mid, leave_dir, family, v_mid, +1);
    if (plus.saddle || minus.saddle) {
      // one stable sweep out of the saddle covers the whole heteroclinic
      const int dir = plus.saddle ? +1 : -1;
      const Vec& u_eq = plus.saddle ? plus.u_eq : minus.u_eq;
      prof.samples = saddle_sweep_profile(model, flow, u_mid,
                                          sp_mid.l(family), u_eq, family,
                                          v_mid, dir, span, opts);
      return prof;
    }
    HalfProfile left =
        direct_half_reduced(model, flow, u_mid, v_mid, -1, span, opts);
    HalfProfile right =
        direct_half_reduced(model, flow, u_mid, v_mid, +1, span, opts);
    prof.samples.reserve(left.samples.size() + right.samples.size() + 1);
    for (auto it = left.samples.rbegin(); it != left.samples.rend(); ++it)
      prof.samples.push_back(*it);
    prof.samples.push_back({0.0, u_mid, v0});
    for (const auto& s : right.samples) prof.samples.push_back(s);
    return prof;
  }

  HalfProfile left =
      direct_half_full(model, u_mid, v0, sigma, v_mid, -1, span, opts);
  HalfProfile right =
      direct_half_full(model, u_mid, v0, sigma, v_mid, +1, span, opts);
  prof.samples.reserve(left.samples.size() + right.samples.size() + 1);
  for (auto it = left.samples.rbegin(); it != left.samples.rend(); ++it)
    prof.samples.push_back(*it);
  prof.samples.push_back({0.0, u_mid, v0});
  for (const auto& s : right.samples) prof.samples.push_back(s);
  return prof;
}

Field profile_to_field(const TravellingProfile& prof, const Grid1D& grid,
                       double epsilon, double x_center, double t) {
  require(!prof.samples.empty(), ErrorCode::InvalidArgument, "empty profile");
  require(epsilon > 0.0, ErrorCode::InvalidArgument, "epsilon > 0");
  const int n = prof.samples.front().u.n;
  Field out(grid, n, t);
  const auto& s = prof.samples;
  for (int j = 0; j < grid.m; ++j) {
    const double xi = (grid.x(j) - x_center) / epsilon;
    if (xi <= s.front().x) {
      out.set_state(j, s.front().u);
      continue;
    }
    if (xi >= s.back().x) {
      out.set_state(j, s.back().u);
      continue;
    }
    auto it = std::lower_bound(
        s.begin(), s.end(), xi,
        [](const ProfileSample& a, double val) { return a.x < val; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (xi - lo.x) / (hi.x - lo.x);
    out.set_state(j, (1.0 - w) * lo.u + w * hi.u);
  }
  return out;
}

}  // namespace vvhyp
