#include "vvhyp/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace vvhyp {

std::vector<double> flux_integral(const SystemModel& model,
                                  const GammaCurve& curve) {
  const int m = curve.nodes();
  std::vector<double> f(m, 0.0);
  if (m <= 1) return f;
  std::vector<double> lam(m);
  for (int k = 0; k < m; ++k)
    lam[k] =
        rtilde(model, curve.u[k], curve.v[k], curve.sigma[k], curve.family)
            .lambda;
  for (int k = 1; k < m; ++k)
    f[k] = f[k - 1] +
           0.5 * (lam[k - 1] + lam[k]) * (curve.tau[k] - curve.tau[k - 1]);
  return f;
}

Envelope lower_convex_envelope(const std::vector<double>& taus,
                               const std::vector<double>& fvals) {
  const int m = static_cast<int>(taus.size());
  require(m >= 1 && fvals.size() == taus.size(), ErrorCode::InvalidArgument,
          "envelope input sizes");
  for (int k = 0; k + 1 < m; ++k)
    require(taus[k + 1] > taus[k], ErrorCode::InvalidArgument,
            "taus must be strictly increasing");
  Envelope out;
  out.values.resize(m);
  out.slopes.resize(m);
  if (m == 1) {
    out.values[0] = fvals[0];
    out.slopes[0] = 0.0;
    return out;
  }

  // lower hull, monotone chain
  std::vector<int> hull;
  hull.reserve(m);
  for (int k = 0; k < m; ++k) {
    while (hull.size() >= 2) {
      const int a = hull[hull.size() - 2];
      const int b = hull[hull.size() - 1];
      const double cross = (taus[b] - taus[a]) * (fvals[k] - fvals[b]) -
                           (fvals[b] - fvals[a]) * (taus[k] - taus[b]);
      if (cross <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }

  int seg = 0;
  for (int k = 0; k < m; ++k) {
    while (seg + 1 < static_cast<int>(hull.size()) && hull[seg + 1] < k) ++seg;
    const int a = hull[seg];
    const int b = hull[seg + 1 > static_cast<int>(hull.size()) - 1
                           ? static_cast<int>(hull.size()) - 1
                           : seg + 1];
    const double slope = (fvals[b] - fvals[a]) / (taus[b] - taus[a]);
    if (k == a) {
      out.values[k] = fvals[k];
    } else {
      out.values[k] = fvals[a] + slope * (taus[k] - taus[a]);
    }
    out.slopes[k] = slope;
  }
  return out;
}

Envelope upper_concave_envelope(const std::vector<double>& taus,
                                const std::vector<double>& fvals) {
  std::vector<double> neg(fvals.size());
  for (size_t k = 0; k < fvals.size(); ++k) neg[k] = -fvals[k];
  Envelope e = lower_convex_envelope(taus, neg);
  for (double& x : e.values) x = -x;
  for (double& x : e.slopes) x = -x;
  return e;
}

double dagger_distance(const GammaCurve& a, const GammaCurve& b,
                       double eps_dagger) {
  require(a.nodes() == b.nodes(), ErrorCode::GridMismatch,
          "curves with different node counts");
  double du = 0.0, dv = 0.0, ds = 0.0;
  for (int k = 0; k < a.nodes(); ++k) {
    du = std::max(du, norm2(a.u[k] - b.u[k]));
    dv = std::max(dv, std::abs(a.v[k] - b.v[k]));
    ds = std::max(ds, std::abs(a.sigma[k] - b.sigma[k]));
  }
  return du + dv + eps_dagger * ds;
}

GammaCurve t_step(const SystemModel& model, const Vec& u_minus,
                  const GammaCurve& curve, const RiemannParams& params) {
  const int m = curve.nodes();
  GammaCurve out = curve;
  if (m <= 1) return out;

  std::vector<double> lam(m);
  std::vector<Vec> rts(m);
  for (int k = 0; k < m; ++k) {
    RTilde rt =
        rtilde(model, curve.u[k], curve.v[k], curve.sigma[k], curve.family);
    lam[k] = rt.lambda;
    rts[k] = rt.r;
  }
  std::vector<double> f(m, 0.0);
  for (int k = 1; k < m; ++k)
    f[k] = f[k - 1] +
           0.5 * (lam[k - 1] + lam[k]) * (curve.tau[k] - curve.tau[k - 1]);

  Envelope env = lower_convex_envelope(curve.tau, f);
  const double o = static_cast<double>(curve.orientation);
  out.u[0] = u_minus;
  for (int k = 1; k < m; ++k)
    out.u[k] = out.u[k - 1] + (o * 0.5 * (curve.tau[k] - curve.tau[k - 1])) *
                                  (rts[k - 1] + rts[k]);
  for (int k = 0; k < m; ++k) {
    out.v[k] = o * (f[k] - env.values[k]);
    out.sigma[k] = env.slopes[k];
  }

  const double lam0 = spectrum(model, u_minus).lambdas[curve.family];
  for (int k = 0; k < m; ++k) {
    if (norm2(out.u[k] - u_minus) > params.eps_gamma ||
        std::abs(out.v[k]) > params.eps_gamma ||
        std::abs(out.sigma[k] - lam0) > params.eps_gamma)
      fail(ErrorCode::LeftBall,
           "T_{i,s} image left the curve ball at node " + std::to_string(k));
  }
  return out;
}

GammaCurve initial_curve(const SystemModel& model, const Vec& u_minus,
                         int family, double s, int nodes) {
  require(family >= 0 && family < model.n, ErrorCode::InvalidArgument,
          "family index");
  require(nodes >= 1, ErrorCode::InvalidArgument, "nodes >= 1");
  Spectrum sp = spectrum(model, u_minus);
  GammaCurve g;
  g.family = family;
  g.s = s;
  g.orientation = (s < 0.0) ? -1 : 1;
  const double len = std::abs(s);
  const int m = (s == 0.0) ? 1 : nodes + 1;
  g.tau.resize(m);
  g.u.resize(m);
  g.v.assign(m, 0.0);
  g.sigma.assign(m, sp.lambdas[family]);
  Vec r = sp.r(family);
  for (int k = 0; k < m; ++k) {
    g.tau[k] = (m == 1) ? 0.0 : len * k / (m - 1);
    g.u[k] = u_minus + (g.orientation * g.tau[k]) * r;
  }
  return g;
}

GammaCurve wave_curve(const SystemModel& model, const Vec& u_minus, int family,
                      double s, const RiemannParams& params) {
  require(std::abs(s) <= params.s_max * (1.0 + 1e-12),
          ErrorCode::InvalidArgument, "|s| exceeds s_max");
  GammaCurve g = initial_curve(model, u_minus, family, s, params.nodes);
  if (g.nodes() <= 1) return g;
  double prev_d = std::numeric_limits<double>::infinity();
  double last_ratio = std::numeric_limits<double>::quiet_NaN();
  for (int it = 0; it < params.fixed_point_max_iter; ++it) {
    GammaCurve next = t_step(model, u_minus, g, params);
    const double d = dagger_distance(next, g, params.eps_gamma);
    g = std::move(next);
    if (d <= params.fixed_point_tol) return g;
    if (std::isfinite(prev_d) && prev_d > 0.0) last_ratio = d / prev_d;
    prev_d = d;
  }
  fail(ErrorCode::NonConvergence,
       "wave_curve fixed point stalled (last contraction ratio " +
           std::to_string(last_ratio) + ")");
}

Vec psi(const SystemModel& model, const Vec& u_minus, int family, double s,
        const RiemannParams& params) {
  return wave_curve(model, u_minus, family, s, params).endpoint();
}

namespace {

Vec compose_psi(const SystemModel& model, const Vec& u_minus,
                const std::vector<double>& s, const RiemannParams& params) {
  Vec u = u_minus;
  for (int i = 0; i < model.n; ++i) u = psi(model, u, i, s[i], params);
  return u;
}

}  // namespace

WaveFan solve_riemann(const SystemModel& model, const Vec& u_minus,
                      const Vec& u_plus, const RiemannParams& params) {
  const int n = model.n;
  require(u_minus.n == n && u_plus.n == n, ErrorCode::InvalidArgument,
          "state dimensions");

  Spectrum sp = spectrum(model, u_minus);
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = dot(sp.l(i), u_plus - u_minus);

  auto residual = [&](const std::vector<double>& z) {
    Vec r = compose_psi(model, u_minus, z, params) - u_plus;
    return r;
  };

  Vec f = residual(s);
  double fn = norm_inf(f);
  int iter = 0;
  while (fn > params.newton_tol && iter < params.newton_max_iter) {
    Mat jac(n);
    for (int col = 0; col < n; ++col) {
      std::vector<double> sp_ = s;
      sp_[col] += params.newton_fd_step;
      Vec fp = residual(sp_);
      for (int row = 0; row < n; ++row)
        jac(row, col) = (fp[row] - f[row]) / params.newton_fd_step;
    }
    Vec step = solve_linear(jac, (-1.0) * f);
    double alpha = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 8; ++halving) {
      std::vector<double> st(n);
      for (int i = 0; i < n; ++i) st[i] = s[i] + alpha * step[i];
      Vec ft = residual(st);
      if (norm_inf(ft) < fn) {
        s = st;
        f = ft;
        fn = norm_inf(f);
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    ++iter;
    if (!accepted) break;
  }
  if (fn > params.newton_tol)
    fail(ErrorCode::NewtonStall, "Riemann Newton residual " +
                                     std::to_string(fn) + " after " +
                                     std::to_string(iter) + " iterations");

  WaveFan fan;
  fan.u_left = u_minus;
  fan.u_right = u_plus;
  fan.strengths = s;
  fan.intermediate_states.push_back(u_minus);
  for (int i = 0; i < n; ++i) {
    GammaCurve c =
        wave_curve(model, fan.intermediate_states.back(), i, s[i], params);
    fan.intermediate_states.push_back(c.endpoint());
    fan.curves.push_back(std::move(c));
  }

  // strictly separating speed partition
  std::vector<double> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    const GammaCurve& c = fan.curves[i];
    if (c.nodes() <= 1) {
      const double lam =
          spectrum(model, fan.intermediate_states[i]).lambdas[i];
      lo[i] = hi[i] = lam;
    } else {
      lo[i] = c.sigma.front();
      hi[i] = c.sigma.back();
    }
  }
  fan.speed_partition.assign(n + 1, 0.0);
  fan.speed_partition[0] = -std::numeric_limits<double>::infinity();
  fan.speed_partition[n] = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < n; ++i) {
    if (!(hi[i] < lo[i + 1]))
      fail(ErrorCode::SpeedOverlap,
           "families " + std::to_string(i + 1) + " and " +
               std::to_string(i + 2) + " have overlapping speed ranges");
    fan.speed_partition[i + 1] = 0.5 * (hi[i] + lo[i + 1]);
  }
  return fan;
}

Vec sample_fan(const WaveFan& fan, double xi) {
  const int n = fan.families();
  for (int i = 0; i < n; ++i) {
    const GammaCurve& c = fan.curves[i];
    if (c.nodes() <= 1) continue;
    if (xi < c.sigma.front()) return fan.intermediate_states[i];
    if (xi <= c.sigma.back()) {
      // first node with sigma > xi; nondecreasing sigma
      auto it = std::upper_bound(c.sigma.begin(), c.sigma.end(), xi);
      if (it == c.sigma.end()) return c.u.back();
      const int hi = static_cast<int>(it - c.sigma.begin());
      const int lo = hi - 1;
      const double gap = c.sigma[hi] - c.sigma[lo];
      const double w = (gap > 0.0) ? (xi - c.sigma[lo]) / gap : 0.0;
      return (1.0 - w) * c.u[lo] + w * c.u[hi];
    }
  }
  return fan.intermediate_states[n];
}

Vec rankine_hugoniot_residual(const SystemModel& model, const Vec& u_minus,
                              const Vec& u_plus, double lambda) {
  require(model.has_flux(), ErrorCode::NoFlux,
          "Rankine-Hugoniot residual needs a flux");
  return lambda * (u_plus - u_minus) -
         (model.eval_flux(u_plus) - model.eval_flux(u_minus));
}

AdmissibilityReport check_admissibility(const WaveFan& fan,
                                        const SystemModel& model,
                                        const RiemannParams& params) {
  AdmissibilityReport rep;
  for (int i = 0; i < fan.families(); ++i) {
    const GammaCurve& c = fan.curves[i];
    const int m = c.nodes();
    if (m <= 1 || std::abs(c.s) < 1e-8) continue;  // no wave
    std::vector<double> f = flux_integral(model, c);

    int k = 0;
    while (k + 1 < m) {
      // maximal run of equal envelope slopes
      int b = k;
      const double sig = c.sigma[k + 1];
      while (b + 1 < m &&
             std::abs(c.sigma[b + 1] - sig) <= 1e-12 * (1.0 + std::abs(sig)))
        ++b;
      if (b - k >= 2 || (b - k >= 1 && [&] {
            for (int q = k; q <= b; ++q)
              if (std::abs(c.v[q]) > 1e-10) return true;
            return false;
          }())) {
        ShockRecord rec;
        rec.family = i;
        rec.tau_a = c.tau[k];
        rec.tau_b = c.tau[b];
        rec.sigma = sig;
        rec.u_left = c.u[k];
        rec.u_right = c.u[b];
        rec.liu_margin = std::numeric_limits<double>::infinity();
        for (int q = k + 1; q <= b; ++q) {
          const double chord = (f[q] - f[k]) / (c.tau[q] - c.tau[k]);
          rec.liu_margin = std::min(rec.liu_margin, chord - sig);
        }
        rec.liu_ok = rec.liu_margin >= -params.env_tol;
        const double lam_left =
            spectrum(model, rec.u_left).lambdas[i];
        const double lam_right =
            spectrum(model, rec.u_right).lambdas[i];
        rec.lax_left_margin = lam_left - sig;
        rec.lax_right_margin = sig - lam_right;
        rec.lax_ok = rec.lax_left_margin >= -params.lax_tol &&
                     rec.lax_right_margin >= -params.lax_tol;
        rep.all_liu = rep.all_liu && rec.liu_ok;
        rep.all_lax = rep.all_lax && rec.lax_ok;
        rep.shocks.push_back(rec);
      }
      k = b > k ? b : k + 1;
    }
  }
  return rep;
}

void write_fan_csv(const WaveFan& fan, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  require(fp != nullptr, ErrorCode::IoError, "cannot open " + path);
  const int n = fan.u_left.n;
  std::fprintf(fp, "family,tau,sigma");
  for (int k = 0; k < n; ++k) std::fprintf(fp, ",u%d", k + 1);
  std::fprintf(fp, "\n");
  for (int i = 0; i < fan.families(); ++i) {
    const GammaCurve& c = fan.curves[i];
    for (int k = 0; k < c.nodes(); ++k) {
      std::fprintf(fp, "%d,%.12e,%.12e", i + 1,
                   c.orientation * c.tau[k], c.sigma[k]);
      for (int q = 0; q < n; ++q) std::fprintf(fp, ",%.12e", c.u[k][q]);
      std::fprintf(fp, "\n");
    }
  }
  std::fclose(fp);
}

void write_fan_profile_csv(const WaveFan& fan, double xi_lo, double xi_hi,
                           int count, const std::string& path) {
  require(count >= 2 && xi_hi > xi_lo, ErrorCode::InvalidArgument,
          "profile window");
  std::FILE* fp = std::fopen(path.c_str(), "w");
  require(fp != nullptr, ErrorCode::IoError, "cannot open " + path);
  const int n = fan.u_left.n;
  std::fprintf(fp, "xi");
  for (int k = 0; k < n; ++k) std::fprintf(fp, ",u%d", k + 1);
  std::fprintf(fp, "\n");
  for (int j = 0; j < count; ++j) {
    const double xi = xi_lo + (xi_hi - xi_lo) * j / (count - 1);
    Vec u = sample_fan(fan, xi);
    std::fprintf(fp, "%.12e", xi);
    for (int k = 0; k < n; ++k) std::fprintf(fp, ",%.12e", u[k]);
    std::fprintf(fp, "\n");
  }
  std::fclose(fp);
}

}  // namespace vvhyp
