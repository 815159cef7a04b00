#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace cylperc {

/// Dense row-major square matrix; just enough linear algebra for the
/// chain computations here.
struct Matrix {
  int n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// v^T M (left action).
inline std::vector<double> left_apply(const std::vector<double>& v, const Matrix& m) {
  std::vector<double> out(m.n, 0.0);
  for (int i = 0; i < m.n; ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    const double* row = &m.a[static_cast<std::size_t>(i) * m.n];
    for (int j = 0; j < m.n; ++j) out[j] += vi * row[j];
  }
  return out;
}

/// M v (right action).
inline std::vector<double> right_apply(const Matrix& m, const std::vector<double>& v) {
  std::vector<double> out(m.n, 0.0);
  for (int i = 0; i < m.n; ++i) {
    const double* row = &m.a[static_cast<std::size_t>(i) * m.n];
    double s = 0.0;
    for (int j = 0; j < m.n; ++j) s += row[j] * v[j];
    out[i] = s;
  }
  return out;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix out(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int l = 0; l < a.n; ++l) {
      const double v = a.at(i, l);
      if (v == 0.0) continue;
      for (int j = 0; j < a.n; ++j) out.at(i, j) += v * b.at(l, j);
    }
  return out;
}

inline Matrix matrix_power(Matrix base, int e) {
  Matrix result(base.n);
  for (int i = 0; i < base.n; ++i) result.at(i, i) = 1.0;
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return result;
}

/// Compensated accumulator; keeps rounding at O(eps * |total|) over
/// millions of terms (long-horizon log-survival sums need this).
struct KahanSum {
  double total = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = total + y;
    carry = (t - total) - y;
    total = t;
  }
};

inline double l1_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

inline double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

inline double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

}  // namespace cylperc
