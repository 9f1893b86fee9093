#include "swlyap/sl2.hpp"

#include <algorithm>
#include <string>

#include "swlyap/errors.hpp"

namespace swlyap {

namespace {

// Below this |alpha t| the ratio sinh(x)/alpha (resp. sin) uses its series.
constexpr double kSeriesCutoff = 1e-4;

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::array<std::array<double, 3>, 3> gram(const Sl2& a, const Sl2& b) {
  const std::array<Sl2, 3> e{a, b, bracket(a, b)};
  std::array<std::array<double, 3>, 3> g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = trace_product(e[i], e[j]);
  return g;
}

}  // namespace

double Mat2::op_norm() const {
  const double p = std::hypot(m11 + m22, m21 - m12);
  const double q = std::hypot(m11 - m22, m12 + m21);
  return 0.5 * (p + q);
}

bool Mat2::finite() const {
  return std::isfinite(m11) && std::isfinite(m12) && std::isfinite(m21) && std::isfinite(m22);
}

Mat2 Mat2::inverse() const {
  const double d = det();
  if (std::abs(d) < 1e-12) throw SingularMatrixError("matrix is singular: det = " + std::to_string(d));
  return {m22 / d, -m12 / d, -m21 / d, m11 / d};
}

double TraceInvariants::scale() const {
  return std::max({std::abs(a), std::abs(b), std::abs(c), 1.0});
}

Sl2 bracket(const Sl2& x, const Sl2& y) {
  // [X,Y] for trace-zero X, Y; the diagonal is (x12 y21 - x21 y12) * diag(1,-1).
  return {x.m12 * y.m21 - x.m21 * y.m12,
          2.0 * (x.m11 * y.m12 - x.m12 * y.m11),
          2.0 * (x.m21 * y.m11 - x.m11 * y.m21)};
}

double trace_product(const Sl2& x, const Sl2& y) {
  return 2.0 * (x.m11 * y.m11) + (x.m12 * y.m21 + x.m21 * y.m12);
}

TraceInvariants trace_invariants(const Sl2& x, const Sl2& y) {
  return {trace_product(x, x), trace_product(y, y), trace_product(x, y)};
}

double commutator_trace_sq(const TraceInvariants& inv) {
  return 2.0 * inv.c * inv.c - 2.0 * inv.a * inv.b;
}

double commutator_trace_sq(const Sl2& x, const Sl2& y) {
  return commutator_trace_sq(trace_invariants(x, y));
}

EigenParameter eigen_parameter(const Sl2& m, double tol) {
  const double sq = trace_product(m, m);
  const double n = m.frobenius();
  const double cutoff = tol * std::max(1.0, n * n);
  if (std::abs(sq) <= cutoff) return {EigenKind::Nilpotent, 0.0};
  const double alpha = std::sqrt(0.5 * std::abs(sq));
  return {sq > 0.0 ? EigenKind::Real : EigenKind::Imaginary, alpha};
}

FlowCoefficients flow_coefficients(const EigenParameter& ep, double t) {
  const double x = ep.alpha * t;
  switch (ep.kind) {
    case EigenKind::Nilpotent:
      return {1.0, t, 0.0};
    case EigenKind::Real: {
      const double ch = std::cosh(x);
      if (!std::isfinite(ch))
        throw OverflowError("cosh(alpha t) overflows at alpha t = " + std::to_string(x));
      const double half = std::sinh(0.5 * x);
      const double sh = std::abs(x) < kSeriesCutoff
                            ? t * (1.0 + x * x / 6.0 + x * x * x * x / 120.0)
                            : std::sinh(x) / ep.alpha;
      return {ch, sh, 2.0 * half * half};
    }
    case EigenKind::Imaginary: {
      const double half = std::sin(0.5 * x);
      const double sh = std::abs(x) < kSeriesCutoff
                            ? t * (1.0 - x * x / 6.0 + x * x * x * x / 120.0)
                            : std::sin(x) / ep.alpha;
      return {std::cos(x), sh, -2.0 * half * half};
    }
  }
  return {};
}

Mat2 expm(const Sl2& m, double t) {
  const auto f = flow_coefficients(eigen_parameter(m), t);
  return f.ch * Mat2::identity() + f.sh * m.mat();
}

bool independence_test(const Sl2& a, const Sl2& b, double tol) {
  const double s = trace_invariants(a, b).scale();
  return std::abs(det3(gram(a, b))) > tol * s * s * s;
}

BasisCoords basis_coordinates(const Sl2& m, const Sl2& a, const Sl2& b) {
  if (!independence_test(a, b))
    throw DegenerateBasisError("{A, B, [A,B]} is not a basis of sl2(R)");
  // Cramer's rule on the coordinate matrix, columns (m11, m12, m21) of A, B, [A,B].
  const std::array<Sl2, 3> e{a, b, bracket(a, b)};
  std::array<std::array<double, 3>, 3> cols{};
  for (int k = 0; k < 3; ++k) {
    const auto c = e[k].coords();
    for (int i = 0; i < 3; ++i) cols[i][k] = c[i];
  }
  const auto rhs = m.coords();
  const double d = det3(cols);
  std::array<double, 3> sol{};
  for (int k = 0; k < 3; ++k) {
    auto ck = cols;
    for (int i = 0; i < 3; ++i) ck[i][k] = rhs[i];
    sol[k] = det3(ck) / d;
  }
  return {sol[0], sol[1], sol[2]};
}

}  // namespace swlyap
