#include "vvhyp/model.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace vvhyp {

Vec SystemModel::eval_flux(const Vec& u) const {
  require(has_flux(), ErrorCode::NoFlux, "model '" + name + "' has no flux");
  return flux(u);
}

Mat SystemModel::eval_dA(const Vec& u, const Vec& z) const {
  if (dA_dir) return dA_dir(u, z);
  const double zn = norm2(z);
  if (zn == 0.0) return Mat(n);
  const double h = 1e-6 * (1.0 + norm2(u));
  Vec dir = (1.0 / zn) * z;
  Mat ap = A(u + h * dir);
  Mat am = A(u - h * dir);
  Mat d = ap - am;
  d *= zn / (2.0 * h);
  return d;
}

bool SystemModel::inside_ball(const Vec& u) const {
  Vec d = u - u_star;
  return norm2(d) <= radius * (1.0 + 1e-12) + 1e-12;
}

Spectrum spectrum(const SystemModel& model, const Vec& u) {
  require(u.n == model.n, ErrorCode::InvalidArgument, "state dimension");
  require(model.inside_ball(u), ErrorCode::InvalidArgument,
          "state outside the validity ball of '" + model.name + "'");
  EigenPair e = eig_real_distinct(model.A(u), model.gap_tol);
  return Spectrum{e.lambdas, e.R, e.L};
}

namespace {

// Halton sequence in [0,1).
double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  int i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

}  // namespace

HyperbolicityReport check_strict_hyperbolicity(const SystemModel& model,
                                               int sample_count) {
  require(sample_count >= 1, ErrorCode::InvalidArgument, "sample_count >= 1");
  HyperbolicityReport rep;
  rep.argmin_state = model.u_star;
  if (model.n == 1) {
    rep.scalar = true;
    rep.min_gap = std::numeric_limits<double>::infinity();
    rep.samples = sample_count;
    return rep;
  }
  static const int bases[kMaxDim] = {2, 3, 5, 7};
  rep.min_gap = std::numeric_limits<double>::infinity();
  int accepted = 0;
  int index = 1;
  while (accepted < sample_count) {
    Vec y(model.n);
    if (accepted == 0) {
      // always include the reference state itself
    } else {
      double r2 = 0.0;
      for (int d = 0; d < model.n; ++d) {
        y[d] = 2.0 * halton(index, bases[d]) - 1.0;
        r2 += y[d] * y[d];
      }
      ++index;
      if (r2 > 1.0) continue;  // keep the cube points that land in the ball
    }
    Vec u = model.u_star + model.radius * y;
    ++accepted;
    EigenPair e = eig_real_distinct(model.A(u), 0.0);
    for (int i = 0; i + 1 < model.n; ++i) {
      const double gap = e.lambdas[i + 1] - e.lambdas[i];
      if (gap < rep.min_gap) {
        rep.min_gap = gap;
        rep.argmin_state = u;
      }
    }
  }
  rep.samples = sample_count;
  rep.violated = rep.min_gap < model.gap_tol;
  return rep;
}

namespace {

SystemModel make_burgers() {
  SystemModel m;
  m.name = "burgers";
  m.n = 1;
  m.A = [](const Vec& u) {
    Mat a(1);
    a(0, 0) = u[0];
    return a;
  };
  m.flux = [](const Vec& u) { return Vec{0.5 * u[0] * u[0]}; };
  m.dA_dir = [](const Vec&, const Vec& z) {
    Mat d(1);
    d(0, 0) = z[0];
    return d;
  };
  m.u_star = Vec{0.0};
  m.radius = 2.0;  // scalar field, hyperbolic everywhere; wide ball for the
                   // Riemann benchmarks with states in [-1, 1]
  return m;
}

SystemModel make_burgers_shift(double delta) {
  SystemModel m = make_burgers();
  m.name = "burgers_shift:" + std::to_string(delta);
  m.A = [delta](const Vec& u) {
    Mat a(1);
    a(0, 0) = u[0] + delta;
    return a;
  };
  m.flux = [delta](const Vec& u) {
    return Vec{0.5 * u[0] * u[0] + delta * u[0]};
  };
  return m;
}

SystemModel make_linear2() {
  SystemModel m;
  m.name = "linear2";
  m.n = 2;
  m.A = [](const Vec&) {
    Mat a(2);
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    return a;
  };
  m.flux = [](const Vec& u) { return Vec{u[1], u[0]}; };
  m.dA_dir = [](const Vec&, const Vec&) { return Mat(2); };
  m.u_star = Vec{0.0, 0.0};
  m.radius = 1.0;
  return m;
}

// Lagrangian p-system with p(v) = v^-gamma; state u = (v, w),
// flux f = (w, -p(v)), A = Df = [[0, 1], [-p'(v), 0]].
SystemModel make_p_system(double gamma) {
  SystemModel m;
  m.name = "p_system:" + std::to_string(gamma);
  m.n = 2;
  m.A = [gamma](const Vec& u) {
    Mat a(2);
    a(0, 1) = 1.0;
    a(1, 0) = gamma * std::pow(u[0], -gamma - 1.0);  // -p'(v)
    return a;
  };
  m.flux = [gamma](const Vec& u) {
    return Vec{u[1], -std::pow(u[0], -gamma)};
  };
  m.dA_dir = [gamma](const Vec& u, const Vec& z) {
    Mat d(2);
    d(1, 0) = -gamma * (gamma + 1.0) * std::pow(u[0], -gamma - 2.0) * z[0];
    return d;
  };
  m.u_star = Vec{1.0, 0.0};
  m.radius = 0.5;
  return m;
}

// Non-conservative upper-triangular toy system.
SystemModel make_nc_toy() {
  SystemModel m;
  m.name = "nc_toy";
  m.n = 2;
  m.A = [](const Vec& u) {
    Mat a(2);
    a(0, 0) = 1.0 + u[1];
    a(0, 1) = u[0];
    a(1, 1) = 2.0 + u[0];
    return a;
  };
  m.dA_dir = [](const Vec&, const Vec& z) {
    Mat d(2);
    d(0, 0) = z[1];
    d(0, 1) = z[0];
    d(1, 1) = z[0];
    return d;
  };
  m.u_star = Vec{0.0, 0.0};
  m.radius = 0.2;
  return m;
}

}  // namespace

SystemModel lookup_model(const std::string& spec) {
  std::string base = spec;
  std::string arg;
  if (auto pos = spec.find(':'); pos != std::string::npos) {
    base = spec.substr(0, pos);
    arg = spec.substr(pos + 1);
  }
  auto param = [&](double fallback) {
    if (arg.empty()) return fallback;
    char* end = nullptr;
    double v = std::strtod(arg.c_str(), &end);
    require(end && *end == '\0', ErrorCode::UnknownModel,
            "bad model parameter '" + arg + "'");
    return v;
  };
  if (base == "burgers") return make_burgers();
  if (base == "burgers_shift") return make_burgers_shift(param(0.0));
  if (base == "linear2") return make_linear2();
  if (base == "p_system") return make_p_system(param(1.4));
  if (base == "nc_toy") return make_nc_toy();
  fail(ErrorCode::UnknownModel, "no model named '" + spec + "'");
}

std::vector<std::string> builtin_model_names() {
  return {"burgers", "burgers_shift:<delta>", "linear2", "p_system:<gamma>",
          "nc_toy"};
}

}  // namespace vvhyp
