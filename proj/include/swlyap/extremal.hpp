#pragma once

// Adjoint (covector) geometry of the maximum-principle extremals.  Covectors
// are identified with sl2 elements through the trace form, so the adjoint
// flow is eta(t) = X(t)^{-1} eta0 X(t) and lives on a level set of tr(eta^2).

#include <array>
#include <vector>

#include "swlyap/sl2.hpp"

namespace swlyap {

struct AdjointState {
  Sl2 eta;

  // Rescales to tr(eta^2) = 1; throws DomainError off the one-sheeted
  // hyperboloid (tr(eta^2) <= 0).
  static AdjointState on_hyperboloid(const Sl2& eta);
};

enum class ConicKind { Ellipse, Hyperbola, Degenerate };

struct SwitchingCurveClass {
  ConicKind conic = ConicKind::Degenerate;
  double coeff_alpha = 0.0;
  double coeff_gamma = 0.0;
};

struct SingularData {
  double u_star = 0.0;
  std::array<Sl2, 2> eta_star;  // +eta*, -eta*, both with tr(eta*^2) = 1
  bool admissible = false;      // u* in [0, 1]
  double exponent = 0.0;
  bool bounded_flow = false;    // singular velocity has no real eigenvalue
};

// Throws SingularMatrixError when |det X| < 1e-12.
Sl2 adjoint_propagate(const Sl2& eta0, const Mat2& x);

// phi = tr(eta (A - B)); positive selects u = 1.
double switching_value(const Sl2& eta, const Sl2& a, const Sl2& b);

// Throws DegenerateError when |c - b| <= tol * scale.
SwitchingCurveClass classify_switching_curve(const TraceInvariants& inv, double tol = 1e-12);

// Points of {tr(eta^2) = 1, tr(eta A) = tr(eta B) = c0} in (A, B, [A,B])
// coordinates: empty, one (tangency) or two.
std::vector<BasisCoords> switching_intersections(const TraceInvariants& inv, double c0,
                                                 double tol = 1e-12);

// 2(a + b - 2c) c0^2 + tr([A,B]^2); its sign counts the intersections.
double intersection_discriminant(const TraceInvariants& inv, double c0);

// u* = (c - b) / (2c - a - b).  Throws NoSingularError if the denominator
// vanishes.
double singular_control(const TraceInvariants& inv);

// Throws NoSingularError when (2c - a - b) tr([A,B]^2) <= 0.
SingularData singular_data(const Sl2& a, const Sl2& b);

struct TransversalityResult {
  bool periodic = false;       // X^{-1} eta0 X == eta0
  bool proportional = false;   // traceless part of X parallel to eta0
  double periodicity_residual = 0.0;
  double proportionality_residual = 0.0;
  // tr(eta(T)^2) for eta(T) = X - tr(X)/2 Id, i.e. tr(X)^2/2 - 2.
  double endpoint_trace_sq = 0.0;
};

TransversalityResult transversality_details(const Mat2& x_t, const Sl2& eta0, double tol = 1e-8);
bool transversality_check(const Mat2& x_t, const Sl2& eta0, double tol = 1e-8);

}  // namespace swlyap
