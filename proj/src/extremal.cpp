#include "swlyap/extremal.hpp"

#include <cmath>
#include <string>

#include "swlyap/errors.hpp"

namespace swlyap {

namespace {

double norm3(const std::array<double, 3>& v) { return std::hypot(v[0], v[1], v[2]); }

std::array<double, 3> cross(const std::array<double, 3>& x, const std::array<double, 3>& y) {
  return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

}  // namespace

AdjointState AdjointState::on_hyperboloid(const Sl2& eta) {
  const double q = trace_product(eta, eta);
  if (!(q > 0.0)) throw DomainError("covector is not on the hyperboloid tr(eta^2) > 0");
  return {(1.0 / std::sqrt(q)) * eta};
}

Sl2 adjoint_propagate(const Sl2& eta0, const Mat2& x) {
  const Mat2 xi = x.inverse();
  return Sl2::traceless_part(xi * eta0.mat() * x);
}

double switching_value(const Sl2& eta, const Sl2& a, const Sl2& b) {
  return trace_product(eta, a - b);
}

SwitchingCurveClass classify_switching_curve(const TraceInvariants& inv, double tol) {
  const auto [a, b, c] = inv;
  const double scale = inv.scale();
  if (std::abs(c - b) <= tol * scale)
    throw DegenerateError("tr(AB) = tr(B^2): the switching-plane parameterization breaks down");

  const double k = commutator_trace_sq(inv);
  SwitchingCurveClass out;
  out.coeff_gamma = k;
  out.coeff_alpha = (2.0 * c - a - b) * k / ((c - b) * (c - b));

  const double eps = tol * scale * scale;
  if (std::abs(out.coeff_alpha) <= eps || std::abs(out.coeff_gamma) <= eps) {
    out.conic = ConicKind::Degenerate;
  } else if (out.coeff_alpha > 0.0 && out.coeff_gamma > 0.0) {
    out.conic = ConicKind::Ellipse;
  } else if ((out.coeff_alpha > 0.0) != (out.coeff_gamma > 0.0)) {
    out.conic = ConicKind::Hyperbola;
  } else {
    // Both negative would need tr([A,B]^2) < 0 with 2c > a + b, which no
    // independent real pair satisfies.
    throw DomainError("switching curve has no real points");
  }
  return out;
}

double intersection_discriminant(const TraceInvariants& inv, double c0) {
  return 2.0 * (inv.a + inv.b - 2.0 * inv.c) * c0 * c0 + commutator_trace_sq(inv);
}

std::vector<BasisCoords> switching_intersections(const TraceInvariants& inv, double c0,
                                                 double tol) {
  const auto [a, b, c] = inv;
  const double k = commutator_trace_sq(inv);
  if (k == 0.0) throw DomainError("switching_intersections: tr([A,B]^2) = 0");

  // Signs chosen so that tr(eta A) = tr(eta B) = +c0.
  const double alpha = 2.0 * (c - b) / k * c0;
  const double beta = 2.0 * (c - a) / k * c0;
  const double disc = intersection_discriminant(inv, c0);
  const double scale = inv.scale() * std::max(1.0, c0 * c0);

  if (std::abs(disc) <= tol * scale) return {{alpha, beta, 0.0}};
  if (disc < 0.0) return {};
  const double gamma = std::sqrt(disc) / std::abs(k);
  return {{alpha, beta, gamma}, {alpha, beta, -gamma}};
}

double singular_control(const TraceInvariants& inv) {
  const double den = 2.0 * inv.c - inv.a - inv.b;
  if (den == 0.0) throw NoSingularError("2 tr(AB) - tr(A^2) - tr(B^2) = 0");
  return (inv.c - inv.b) / den;
}

SingularData singular_data(const Sl2& a, const Sl2& b) {
  const auto inv = trace_invariants(a, b);
  const double k = commutator_trace_sq(inv);
  const double den = 2.0 * inv.c - inv.a - inv.b;
  const double s = inv.scale();
  if (!(k * den > 1e-12 * s * s * s))
    throw NoSingularError("(2c - a - b) tr([A,B]^2) <= 0: no singular extremal");

  SingularData out;
  out.u_star = (inv.c - inv.b) / den;
  out.admissible = out.u_star >= -1e-12 && out.u_star <= 1.0 + 1e-12;

  // The singular covector is parallel to (c - b) A + (c - a) B, which is the
  // singular velocity up to the factor 1/den.
  const Sl2 v = (inv.c - inv.b) * a + (inv.c - inv.a) * b;
  const auto st = AdjointState::on_hyperboloid(v);
  out.eta_star = {st.eta, -st.eta};

  const double radicand = k / den;
  if (radicand > 0.0) {
    out.exponent = 0.5 * std::sqrt(radicand);
  } else {
    out.bounded_flow = true;
  }
  return out;
}

TransversalityResult transversality_details(const Mat2& x_t, const Sl2& eta0, double tol) {
  TransversalityResult out;
  const Sl2 p = Sl2::traceless_part(x_t);
  const double pn = norm3(p.coords());
  const double en = norm3(eta0.coords());
  const double tr = x_t.trace();
  out.endpoint_trace_sq = 0.5 * tr * tr - 2.0;

  if (en == 0.0 || pn <= 1e-15 * x_t.frobenius()) {
    // X_T = +-Id (or eta0 = 0) commutes with everything.
    out.periodic = out.proportional = true;
    return out;
  }

  // eta(T) = eta0  <=>  eta0 X = X eta0.
  const Mat2 e = eta0.mat();
  out.periodicity_residual = (e * x_t - x_t * e).frobenius() / (eta0.frobenius() * p.frobenius());
  out.proportionality_residual = norm3(cross(p.coords(), eta0.coords())) / (pn * en);
  out.periodic = out.periodicity_residual <= tol;
  out.proportional = out.proportionality_residual <= tol;
  return out;
}

bool transversality_check(const Mat2& x_t, const Sl2& eta0, double tol) {
  return transversality_details(x_t, eta0, tol).periodic;
}

}  // namespace swlyap
