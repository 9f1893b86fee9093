#pragma once

// 2x2 real matrices and the trace-zero subalgebra sl2(R).
//
// Everything here is a value type with no heap state; the closed-form
// exponential  e^{tM} = ch(t) Id + sh(t) M  holds for any trace-zero M, with
// (ch, sh) = (cosh, sinh/a), (cos, sin/a) or (1, t) depending on the sign of
// tr(M^2) = 2 a^2, -2 a^2 or 0.

#include <array>
#include <cmath>

namespace swlyap {

inline constexpr double kNilpotentTol = 1e-12;
inline constexpr double kIndependenceTol = 1e-10;

struct Mat2 {
  double m11 = 0.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  constexpr double trace() const { return m11 + m22; }
  constexpr double det() const { return m11 * m22 - m12 * m21; }
  double frobenius() const { return std::hypot(std::hypot(m11, m12), std::hypot(m21, m22)); }
  // Largest singular value, closed form for 2x2.
  double op_norm() const;
  bool finite() const;

  // Throws SingularMatrixError if |det| < 1e-12.
  Mat2 inverse() const;

  friend constexpr Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.m11 + y.m11, x.m12 + y.m12, x.m21 + y.m21, x.m22 + y.m22};
  }
  friend constexpr Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.m11 - y.m11, x.m12 - y.m12, x.m21 - y.m21, x.m22 - y.m22};
  }
  friend constexpr Mat2 operator*(double k, const Mat2& x) {
    return {k * x.m11, k * x.m12, k * x.m21, k * x.m22};
  }
  friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.m11 * y.m11 + x.m12 * y.m21, x.m11 * y.m12 + x.m12 * y.m22,
            x.m21 * y.m11 + x.m22 * y.m21, x.m21 * y.m12 + x.m22 * y.m22};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

// Trace-zero 2x2 matrix; m22 is -m11 by construction.
struct Sl2 {
  double m11 = 0.0;
  double m12 = 0.0;
  double m21 = 0.0;

  constexpr double m22() const { return -m11; }
  constexpr Mat2 mat() const { return {m11, m12, m21, -m11}; }
  constexpr std::array<double, 3> coords() const { return {m11, m12, m21}; }
  double frobenius() const { return mat().frobenius(); }
  bool finite() const { return mat().finite(); }

  // Projection X - (tr X / 2) Id.
  static constexpr Sl2 traceless_part(const Mat2& x) {
    const double h = 0.5 * (x.m11 - x.m22);
    return {h, x.m12, x.m21};
  }

  friend constexpr Sl2 operator+(const Sl2& x, const Sl2& y) {
    return {x.m11 + y.m11, x.m12 + y.m12, x.m21 + y.m21};
  }
  friend constexpr Sl2 operator-(const Sl2& x, const Sl2& y) {
    return {x.m11 - y.m11, x.m12 - y.m12, x.m21 - y.m21};
  }
  friend constexpr Sl2 operator-(const Sl2& x) { return {-x.m11, -x.m12, -x.m21}; }
  friend constexpr Sl2 operator*(double k, const Sl2& x) {
    return {k * x.m11, k * x.m12, k * x.m21};
  }
  friend constexpr bool operator==(const Sl2&, const Sl2&) = default;
};

// (a, b, c) = (tr A^2, tr B^2, tr AB).
struct TraceInvariants {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double scale() const;
};

enum class EigenKind { Real, Imaginary, Nilpotent };

struct EigenParameter {
  EigenKind kind = EigenKind::Nilpotent;
  double alpha = 0.0;  // eigenvalues are +-alpha, +-i alpha, or 0
};

// e^{tM} = ch * Id + sh * M.  ch_m1 is ch - 1 computed without cancellation.
struct FlowCoefficients {
  double ch = 1.0;
  double sh = 0.0;
  double ch_m1 = 0.0;
};

Sl2 bracket(const Sl2& x, const Sl2& y);
double trace_product(const Sl2& x, const Sl2& y);
TraceInvariants trace_invariants(const Sl2& x, const Sl2& y);

// tr([A,B]^2) = 2c^2 - 2ab.
double commutator_trace_sq(const Sl2& x, const Sl2& y);
double commutator_trace_sq(const TraceInvariants& inv);

EigenParameter eigen_parameter(const Sl2& m, double tol = kNilpotentTol);

// Throws OverflowError when cosh(alpha t) is not representable.
FlowCoefficients flow_coefficients(const EigenParameter& ep, double t);
Mat2 expm(const Sl2& m, double t);

struct BasisCoords {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

// Coordinates of m in the basis {A, B, [A,B]}.  Throws DegenerateBasisError
// when the basis is not independent.
BasisCoords basis_coordinates(const Sl2& m, const Sl2& a, const Sl2& b);

bool independence_test(const Sl2& a, const Sl2& b, double tol = kIndependenceTol);

}  // namespace swlyap
