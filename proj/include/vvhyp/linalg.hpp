#ifndef VVHYP_LINALG_HPP_
#define VVHYP_LINALG_HPP_

#include <array>
#include <cmath>
#include <initializer_list>

#include "vvhyp/errors.hpp"

namespace vvhyp {

// All state dimensions in this project are tiny (n <= 4), so vectors and
// matrices live on the stack with a runtime dimension.
inline constexpr int kMaxDim = 4;

struct Vec {
  int n = 0;
  std::array<double, kMaxDim> a{};

  Vec() = default;
  explicit Vec(int dim) : n(dim) { a.fill(0.0); }
  Vec(std::initializer_list<double> xs) : n(static_cast<int>(xs.size())) {
    int i = 0;
    for (double x : xs) a[i++] = x;
  }

  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] += o.a[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] -= o.a[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n; ++i) a[i] *= s;
    return *this;
  }
};

inline Vec operator+(Vec x, const Vec& y) { return x += y; }
inline Vec operator-(Vec x, const Vec& y) { return x -= y; }
inline Vec operator*(double s, Vec x) { return x *= s; }
inline Vec operator*(Vec x, double s) { return x *= s; }

inline double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (int i = 0; i < x.n; ++i) s += x.a[i] * y.a[i];
  return s;
}

inline double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

inline double norm_inf(const Vec& x) {
  double s = 0.0;
  for (int i = 0; i < x.n; ++i) s = std::max(s, std::abs(x.a[i]));
  return s;
}

inline bool all_finite(const Vec& x) {
  for (int i = 0; i < x.n; ++i)
    if (!std::isfinite(x.a[i])) return false;
  return true;
}

struct Mat {
  int n = 0;
  std::array<double, kMaxDim * kMaxDim> a{};

  Mat() = default;
  explicit Mat(int dim) : n(dim) { a.fill(0.0); }

  double& operator()(int i, int j) { return a[i * n + j]; }
  double operator()(int i, int j) const { return a[i * n + j]; }

  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  Vec col(int j) const {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec row(int i) const {
    Vec v(n);
    for (int j = 0; j < n; ++j) v[j] = (*this)(i, j);
    return v;
  }
  void set_col(int j, const Vec& v) {
    for (int i = 0; i < n; ++i) (*this)(i, j) = v[i];
  }
  void set_row(int i, const Vec& v) {
    for (int j = 0; j < n; ++j) (*this)(i, j) = v[j];
  }

  Mat& operator+=(const Mat& o) {
    for (int i = 0; i < n * n; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (int i = 0; i < n * n; ++i) a[i] -= o.a[i];
    return *this;
  }
  Mat& operator*=(double s) {
    for (int i = 0; i < n * n; ++i) a[i] *= s;
    return *this;
  }
};

inline Mat operator+(Mat x, const Mat& y) { return x += y; }
inline Mat operator-(Mat x, const Mat& y) { return x -= y; }
inline Mat operator*(double s, Mat x) { return x *= s; }

inline Vec operator*(const Mat& m, const Vec& x) {
  Vec y(m.n);
  for (int i = 0; i < m.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.n; ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline Mat operator*(const Mat& x, const Mat& y) {
  Mat z(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      double s = 0.0;
      for (int j = 0; j < x.n; ++j) s += x(i, j) * y(j, k);
      z(i, k) = s;
    }
  return z;
}

inline double norm_inf(const Mat& m) {
  double s = 0.0;
  for (int i = 0; i < m.n * m.n; ++i) s = std::max(s, std::abs(m.a[i]));
  return s;
}

// Solves m x = b by Gaussian elimination with partial pivoting.
Vec solve_linear(Mat m, Vec b);

// Matrix inverse via Gauss-Jordan with partial pivoting.
Mat inverse(const Mat& m);

// Eigen-decomposition of a small real matrix whose eigenvalues are real and
// distinct. Rows of L are dual to columns of R (L = R^{-1}); eigenvalues come
// out sorted in strictly ascending order. Each right eigenvector is scaled to
// unit Euclidean norm with its largest-magnitude entry positive (ties broken
// by the first such index).
struct EigenPair {
  Vec lambdas;
  Mat R;  // columns are right eigenvectors
  Mat L;  // rows are left eigenvectors
};

EigenPair eig_real_distinct(const Mat& A, double gap_tol);

// Eigenvalues only (ascending), skipping the eigenvector work; used in the
// per-step CFL scan.
Vec eigenvalues_ascending(const Mat& A);

}  // namespace vvhyp

#endif  // VVHYP_LINALG_HPP_
