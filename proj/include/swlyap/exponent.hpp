#pragma once

// Closed-form maximal Lyapunov exponent of  X' = X (u A + (1-u) B),  u in [0,1].

#include <string_view>
#include <variant>

#include "swlyap/sl2.hpp"

namespace swlyap {

inline constexpr double kClassifyTol = 1e-9;

enum class CaseTag { SingularOptimal, ConstantOptimal, PeriodicOptimal, SolvableFallback };

std::string_view to_string(CaseTag tag);

struct CaseLabel {
  CaseTag tag = CaseTag::SolvableFallback;
  bool swapped = false;  // A and B were exchanged so that tr A^2 >= tr B^2
};

struct SingularStrategy {
  double u_star = 0.0;
};
struct ConstantStrategy {
  int u = 1;
};
// t on A (u = 1), then s on B (u = 0), repeated.
struct PeriodicStrategy {
  double t = 0.0;
  double s = 0.0;
};
using Strategy = std::variant<std::monostate, SingularStrategy, ConstantStrategy, PeriodicStrategy>;

struct ExponentReport {
  double value = 0.0;
  CaseLabel label;
  TraceInvariants invariants;  // after normalization to a >= b
  Strategy strategy;           // in the caller's A/B order
};

struct ExponentOptions {
  double classify_tol = kClassifyTol;
  double independence_tol = kIndependenceTol;
};

// Requires inv.a >= inv.b.  Boundaries c = a and c = sqrt(ab) are resolved
// toward ConstantOptimal and SingularOptimal respectively.
CaseTag classify(const TraceInvariants& inv, double tol = kClassifyTol);

ExponentReport lyapunov_exponent(const Sl2& a, const Sl2& b, const ExponentOptions& opts = {});

// sqrt(tr(M^2)/2) for real eigenvalues, else 0.
double constant_control_exponent(const Sl2& m);

// 1/2 sqrt((c^2 - ab) / (c - (a+b)/2)).
double singular_exponent(const TraceInvariants& inv);

// Growth rate of the two imaginary-eigenvalue periodic schedules.  For c < 0
// this is the PeriodicOptimal value; for c > 0 it is the (t,s) =
// (pi/2lambda, pi/2mu) companion, which is never optimal and is exposed only
// as a diagnostic.
double case3_exponent(const TraceInvariants& inv);

// Switching times (pi/(2 lambda), 3 pi/(2 mu)) for a, b < 0.
PeriodicStrategy case3_schedule(const TraceInvariants& inv);

// Evaluates the case formulas from invariants alone, with a >= b enforced by
// swapping.  Throws UnclassifiableError for infeasible (a < 0, |c| < sqrt(ab)).
struct InvariantExponent {
  CaseTag tag;
  double value;
};
InvariantExponent exponent_from_invariants(TraceInvariants inv, double tol = kClassifyTol);

}  // namespace swlyap
