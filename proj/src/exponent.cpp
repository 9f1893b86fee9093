#include "swlyap/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "swlyap/errors.hpp"
#include "swlyap/extremal.hpp"

namespace swlyap {

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::SingularOptimal: return "SingularOptimal";
    case CaseTag::ConstantOptimal: return "ConstantOptimal";
    case CaseTag::PeriodicOptimal: return "PeriodicOptimal";
    case CaseTag::SolvableFallback: return "SolvableFallback";
  }
  return "?";
}

CaseTag classify(const TraceInvariants& inv, double tol) {
  const auto [a, b, c] = inv;
  if (a < b) throw std::invalid_argument("classify: requires tr(A^2) >= tr(B^2)");
  const double eps = tol * inv.scale();
  if (a >= 0.0) return c > a + eps ? CaseTag::SingularOptimal : CaseTag::ConstantOptimal;

  const double r = std::sqrt(a * b);
  if (c >= r - eps) return CaseTag::SingularOptimal;
  if (c <= -r + eps) return CaseTag::PeriodicOptimal;
  std::ostringstream msg;
  msg << "a < 0 and |c| < sqrt(ab): (a, b, c) = (" << a << ", " << b << ", " << c << ")";
  throw UnclassifiableError(msg.str());
}

double constant_control_exponent(const Sl2& m) {
  const auto ep = eigen_parameter(m);
  return ep.kind == EigenKind::Real ? ep.alpha : 0.0;
}

double singular_exponent(const TraceInvariants& inv) {
  const auto [a, b, c] = inv;
  const double num = c * c - a * b;
  const double den = c - 0.5 * (a + b);
  if (den == 0.0) return 0.0;
  return 0.5 * std::sqrt(std::max(0.0, num / den));
}

double case3_exponent(const TraceInvariants& inv) {
  const auto [a, b, c] = inv;
  if (!(a < 0.0 && b < 0.0)) throw DomainError("case3_exponent: requires tr(A^2), tr(B^2) < 0");
  const double gamma = std::abs(c) / std::sqrt(a * b);
  if (gamma < 1.0 - 1e-12) throw DomainError("case3_exponent: arcosh argument below 1");
  const double ta = std::sqrt(-2.0 / a);
  const double tb = std::sqrt(-2.0 / b);
  const double period_weight = c < 0.0 ? ta + 3.0 * tb : ta + tb;
  return 2.0 / (std::numbers::pi * period_weight) * std::acosh(std::max(1.0, gamma));
}

PeriodicStrategy case3_schedule(const TraceInvariants& inv) {
  const double lambda = std::sqrt(-0.5 * inv.a);
  const double mu = std::sqrt(-0.5 * inv.b);
  return {0.5 * std::numbers::pi / lambda, 1.5 * std::numbers::pi / mu};
}

InvariantExponent exponent_from_invariants(TraceInvariants inv, double tol) {
  if (inv.a < inv.b) std::swap(inv.a, inv.b);
  const CaseTag tag = classify(inv, tol);
  switch (tag) {
    case CaseTag::SingularOptimal: return {tag, singular_exponent(inv)};
    case CaseTag::ConstantOptimal: return {tag, std::sqrt(0.5 * inv.a)};
    case CaseTag::PeriodicOptimal: return {tag, case3_exponent(inv)};
    case CaseTag::SolvableFallback: break;
  }
  return {tag, 0.0};
}

ExponentReport lyapunov_exponent(const Sl2& a_in, const Sl2& b_in, const ExponentOptions& opts) {
  ExponentReport rep;
  Sl2 a = a_in;
  Sl2 b = b_in;
  auto inv = trace_invariants(a, b);
  if (inv.a < inv.b) {
    std::swap(a, b);
    std::swap(inv.a, inv.b);
    rep.label.swapped = true;
  }
  rep.invariants = inv;

  if (!independence_test(a, b, opts.independence_tol)) {
    // Solvable (or abelian) pair: the sup over the constant controls.
    const double ea = constant_control_exponent(a);
    const double eb = constant_control_exponent(b);
    rep.label.tag = CaseTag::SolvableFallback;
    rep.value = std::max(ea, eb);
    // Report the control in the caller's original A/B order.
    const bool first = ea >= eb;
    rep.strategy = ConstantStrategy{first != rep.label.swapped ? 1 : 0};
    return rep;
  }

  rep.label.tag = classify(inv, opts.classify_tol);
  switch (rep.label.tag) {
    case CaseTag::SingularOptimal: {
      rep.value = singular_exponent(inv);
      double u = singular_control(inv);
      rep.strategy = SingularStrategy{rep.label.swapped ? 1.0 - u : u};
      break;
    }
    case CaseTag::ConstantOptimal:
      rep.value = std::sqrt(0.5 * inv.a);
      rep.strategy = ConstantStrategy{rep.label.swapped ? 0 : 1};
      break;
    case CaseTag::PeriodicOptimal: {
      rep.value = case3_exponent(inv);
      // A period of the cyclic schedule may start on either matrix.
      const auto sched = case3_schedule(inv);
      rep.strategy = rep.label.swapped ? PeriodicStrategy{sched.s, sched.t} : sched;
      break;
    }
    case CaseTag::SolvableFallback:
      break;
  }
  return rep;
}

}  // namespace swlyap
