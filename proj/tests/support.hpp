#pragma once

// Test-only generators and reference computations.

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "swlyap/sl2.hpp"

namespace swlyap::test {

inline constexpr double kPi = 3.14159265358979323846;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Sl2 sl2(double bound = 5.0) { return {uniform(-bound, bound), uniform(-bound, bound), uniform(-bound, bound)}; }

  // Trace-zero matrix with the requested sign of tr(M^2): real (+1),
  // imaginary (-1) or nilpotent (0).
  Sl2 sl2_of_kind(int kind, double bound = 3.0) {
    for (;;) {
      if (kind == 0) {
        // conjugate of a strictly upper triangular matrix
        const double x = uniform(-bound, bound);
        const Mat2 p = sl2_group(1.0);
        const Mat2 n{0.0, x, 0.0, 0.0};
        return Sl2::traceless_part(p * n * p.inverse());
      }
      const Sl2 m = sl2(bound);
      const double q = trace_product(m, m);
      if (kind > 0 && q > 0.05) return m;
      if (kind < 0 && q < -0.05) return m;
    }
  }

  // Random element of SL2(R) with moderate norm.
  Mat2 sl2_group(double spread = 1.0) {
    for (;;) {
      Mat2 m{uniform(-spread, spread) + 1.0, uniform(-spread, spread), uniform(-spread, spread),
             uniform(-spread, spread) + 1.0};
      const double d = m.det();
      if (d > 0.1) return (1.0 / std::sqrt(d)) * m;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double rel_diff(double x, double y, double floor = 1.0) {
  return std::abs(x - y) / std::max({std::abs(x), std::abs(y), floor});
}

// Gaussian elimination with partial pivoting on a 3x3 system.
inline std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> r) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int i = col + 1; i < 3; ++i)
      if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
    std::swap(m[col], m[piv]);
    std::swap(r[col], r[piv]);
    for (int i = col + 1; i < 3; ++i) {
      const double f = m[i][col] / m[col][col];
      for (int j = col; j < 3; ++j) m[i][j] -= f * m[col][j];
      r[i] -= f * r[col];
    }
  }
  std::array<double, 3> x{};
  for (int i = 2; i >= 0; --i) {
    double s = r[i];
    for (int j = i + 1; j < 3; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

// Spectral radius of a 2x2 matrix with det 1: (|tr| + sqrt(tr^2 - 4)) / 2.
inline double spectral_radius_det1(const Mat2& x) {
  const double tr = std::abs(x.trace());
  return tr >= 2.0 ? 0.5 * (tr + std::sqrt(tr * tr - 4.0)) : 1.0;
}

// Largest real eigenvalue of a trace-zero 2x2 (sqrt(-det)), or 0.
inline double real_eigenvalue(const Mat2& m) {
  const double d = -m.det();
  return d > 0.0 ? std::sqrt(d) : 0.0;
}

}  // namespace swlyap::test
