#include "vvhyp/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace vvhyp {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::NotStrictlyHyperbolic: return "NotStrictlyHyperbolic";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NonpositiveTime: return "NonpositiveTime";
    case ErrorCode::Divergence: return "Divergence";
    case ErrorCode::ResonantDenominator: return "ResonantDenominator";
    case ErrorCode::NewtonStall: return "NewtonStall";
    case ErrorCode::NonpositiveGap: return "NonpositiveGap";
    case ErrorCode::NotScalar: return "NotScalar";
    case ErrorCode::NoFlux: return "NoFlux";
    case ErrorCode::EmptyTriangle: return "EmptyTriangle";
    case ErrorCode::LeftBall: return "LeftBall";
    case ErrorCode::SpeedOverlap: return "SpeedOverlap";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Vec solve_linear(Mat m, Vec b) {
  const int n = m.n;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      std::swap(b[k], b[piv]);
    }
    const double d = m(k, k);
    if (d == 0.0) fail(ErrorCode::NonConvergence, "singular linear system");
    for (int i = k + 1; i < n; ++i) {
      const double f = m(i, k) / d;
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
      b[i] -= f * b[k];
    }
  }
  Vec x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}

Mat inverse(const Mat& m) {
  const int n = m.n;
  Mat a = m;
  Mat inv = Mat::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (std::abs(a(piv, k)) == 0.0)
      fail(ErrorCode::NonConvergence, "singular matrix in inverse()");
    if (piv != k)
      for (int j = 0; j < n; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    const double d = a(k, k);
    for (int j = 0; j < n; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = a(i, k);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

namespace {

// Householder reduction to upper Hessenberg form (n <= 4).
Mat hessenberg(Mat h) {
  const int n = h.n;
  for (int k = 0; k < n - 2; ++k) {
    double xnorm = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm += h(i, k) * h(i, k);
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    Vec v(n);
    const double alpha = h(k + 1, k) >= 0.0 ? -xnorm : xnorm;
    v[k + 1] = h(k + 1, k) - alpha;
    for (int i = k + 2; i < n; ++i) v[i] = h(i, k);
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    // H := (I - 2 v v^T / |v|^2) H (I - 2 v v^T / |v|^2)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = k + 1; i < n; ++i) s += v[i] * h(i, j);
      s *= 2.0 / vnorm2;
      for (int i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
    }
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= 2.0 / vnorm2;
      for (int j = k + 1; j < n; ++j) h(i, j) -= s * v[j];
    }
  }
  return h;
}

// One shifted QR sweep on the active block [lo, hi] of a Hessenberg matrix,
// using Givens rotations.
void qr_sweep(Mat& h, int lo, int hi, double mu) {
  const int n = h.n;
  std::array<double, kMaxDim> cs{}, sn{};
  for (int i = lo; i <= hi; ++i) h(i, i) -= mu;
  for (int k = lo; k < hi; ++k) {
    const double x = h(k, k);
    const double y = h(k + 1, k);
    const double r = std::hypot(x, y);
    const double c = (r == 0.0) ? 1.0 : x / r;
    const double s = (r == 0.0) ? 0.0 : y / r;
    cs[k] = c;
    sn[k] = s;
    for (int j = k; j < n; ++j) {
      const double t1 = h(k, j), t2 = h(k + 1, j);
      h(k, j) = c * t1 + s * t2;
      h(k + 1, j) = -s * t1 + c * t2;
    }
  }
  for (int k = lo; k < hi; ++k) {
    const double c = cs[k], s = sn[k];
    for (int i = 0; i <= std::min(k + 2, hi); ++i) {
      const double t1 = h(i, k), t2 = h(i, k + 1);
      h(i, k) = c * t1 + s * t2;
      h(i, k + 1) = -s * t1 + c * t2;
    }
  }
  for (int i = lo; i <= hi; ++i) h(i, i) += mu;
}

// Eigenvalues of a real matrix with all-real spectrum via the shifted QR
// iteration. Throws NotStrictlyHyperbolic when a complex pair shows up.
Vec qr_eigenvalues(const Mat& A) {
  const int n = A.n;
  Mat h = hessenberg(A);
  Vec lam(n);
  int hi = n - 1;
  int iters = 0;
  const double scale = std::max(norm_inf(A), 1e-300);
  while (hi >= 0) {
    if (++iters > 500) fail(ErrorCode::NonConvergence, "QR iteration stalled");
    // deflate trivially converged rows
    int lo = hi;
    while (lo > 0 &&
           std::abs(h(lo, lo - 1)) >
               1e-15 * (std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo)) +
                        scale * 1e-2))
      --lo;
    if (lo == hi) {
      lam[hi] = h(hi, hi);
      --hi;
      continue;
    }
    // Wilkinson shift from the trailing 2x2 of the active block
    const double a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
    const double c = h(hi, hi - 1), d = h(hi, hi);
    const double tr = a + d, det = a * d - b * c;
    const double disc = tr * tr / 4.0 - det;
    double mu;
    if (disc >= 0.0) {
      const double rt = std::sqrt(disc);
      const double l1 = tr / 2.0 + rt, l2 = tr / 2.0 - rt;
      mu = (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
      if (lo == hi - 1) {
        // 2x2 block with real eigenvalues: deflate directly
        lam[hi] = l1;
        lam[hi - 1] = l2;
        hi -= 2;
        continue;
      }
    } else {
      if (lo == hi - 1 && iters > 60)
        fail(ErrorCode::NotStrictlyHyperbolic,
             "matrix has a complex eigenvalue pair");
      mu = d;
    }
    qr_sweep(h, lo, hi, mu);
  }
  std::sort(lam.a.begin(), lam.a.begin() + n);
  return lam;
}

// Eigenvector by inverse iteration at an already converged eigenvalue.
Vec inverse_iteration(const Mat& A, double lambda, double scale) {
  const int n = A.n;
  Mat shifted = A;
  // tiny perturbation keeps the shifted matrix invertible
  const double eps = 1e-12 * std::max(scale, 1.0);
  for (int i = 0; i < n; ++i) shifted(i, i) -= lambda + eps;
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = 1.0 / std::sqrt(double(n));
  for (int it = 0; it < 4; ++it) {
    Vec y = solve_linear(shifted, x);
    const double nn = norm2(y);
    if (!(nn > 0.0) || !all_finite(y)) break;
    x = (1.0 / nn) * y;
  }
  return x;
}

void fix_sign(Vec& r) {
  int arg = 0;
  double best = std::abs(r[0]);
  for (int i = 1; i < r.n; ++i)
    if (std::abs(r[i]) > best) {
      best = std::abs(r[i]);
      arg = i;
    }
  if (r[arg] < 0.0) r *= -1.0;
}

}  // namespace

Vec eigenvalues_ascending(const Mat& A) {
  const int n = A.n;
  if (n == 1) return Vec{A(0, 0)};
  if (n == 2) {
    const double tr = A(0, 0) + A(1, 1);
    const double det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    const double disc = tr * tr / 4.0 - det;
    if (disc < 0.0)
      fail(ErrorCode::NotStrictlyHyperbolic, "complex eigenvalue pair");
    const double rt = std::sqrt(disc);
    return Vec{tr / 2.0 - rt, tr / 2.0 + rt};
  }
  return qr_eigenvalues(A);
}

EigenPair eig_real_distinct(const Mat& A, double gap_tol) {
  const int n = A.n;
  require(n >= 1 && n <= kMaxDim, ErrorCode::InvalidArgument,
          "dimension out of range");
  EigenPair out;
  out.lambdas = Vec(n);
  out.R = Mat(n);

  if (n == 1) {
    out.lambdas[0] = A(0, 0);
    out.R(0, 0) = 1.0;
    out.L = Mat(1);
    out.L(0, 0) = 1.0;
    return out;
  }

  const double scale = std::max(norm_inf(A), 1e-300);

  if (n == 2) {
    const double tr = A(0, 0) + A(1, 1);
    const double det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    const double disc = tr * tr / 4.0 - det;
    if (disc < 0.0)
      fail(ErrorCode::NotStrictlyHyperbolic, "complex eigenvalue pair");
    const double rt = std::sqrt(disc);
    out.lambdas[0] = tr / 2.0 - rt;
    out.lambdas[1] = tr / 2.0 + rt;
    for (int i = 0; i < 2; ++i) {
      const double lam = out.lambdas[i];
      // null vector of A - lam I from the better-conditioned row
      Vec r1 = {A(0, 1), lam - A(0, 0)};
      Vec r2 = {lam - A(1, 1), A(1, 0)};
      Vec r = (norm2(r1) >= norm2(r2)) ? r1 : r2;
      const double nn = norm2(r);
      if (nn == 0.0) r = (i == 0) ? Vec{1.0, 0.0} : Vec{0.0, 1.0};
      else r *= 1.0 / nn;
      out.R.set_col(i, r);
    }
  } else {
    out.lambdas = qr_eigenvalues(A);
    for (int i = 0; i < n; ++i)
      out.R.set_col(i, inverse_iteration(A, out.lambdas[i], scale));
  }

  for (int i = 0; i + 1 < n; ++i)
    if (out.lambdas[i + 1] - out.lambdas[i] < gap_tol)
      fail(ErrorCode::NotStrictlyHyperbolic,
           "eigenvalue gap below tolerance");

  for (int i = 0; i < n; ++i) {
    Vec r = out.R.col(i);
    r *= 1.0 / norm2(r);
    fix_sign(r);
    out.R.set_col(i, r);
  }
  out.L = inverse(out.R);
  return out;
}

}  // namespace vvhyp
