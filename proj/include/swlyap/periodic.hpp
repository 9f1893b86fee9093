#pragma once

// Two-phase periodic schedules: t on A (u = 1) then s on B (u = 0), with
// monodromy X = e^{tA} e^{sB} and endpoint functional Phi(t,s) = tr X.

#include <array>
#include <optional>
#include <vector>

#include "swlyap/sl2.hpp"

namespace swlyap {

// Guard on |alpha t| for every hyperbolic factor.
inline constexpr double kPhiOverflowGuard = 700.0;

// Nonnegative, finite phase durations.  Throws DomainError otherwise.
struct PeriodPair {
  double t = 0.0;
  double s = 0.0;

  static PeriodPair make(double t, double s);
  double period() const { return t + s; }
};

struct SwitchBranch {
  std::optional<double> t_bar;  // s(t) exists only for t < t_bar
  double slope0 = 0.0;          // (c - a) / (c - b) = lim s(t)/t
};

Mat2 monodromy(const Sl2& a, const Sl2& b, const PeriodPair& p);

// tr(e^{tA} e^{sB}) by explicit product.  Throws OverflowError past the guard.
double phi(const Sl2& a, const Sl2& b, const PeriodPair& p);
// 2 ch_A ch_B + c sh_A sh_B.
double phi_closed_form(const Sl2& a, const Sl2& b, const PeriodPair& p);

// tr(X A) - tr(X B) = dPhi/dt - dPhi/ds.
double switching_residual(const Sl2& a, const Sl2& b, const PeriodPair& p);
double switching_residual_closed_form(const Sl2& a, const Sl2& b, const PeriodPair& p);

SwitchBranch switch_branch(const Sl2& a, const Sl2& b);

// Smallest s > 0 with switching_residual(t, s) = 0.  Throws NoSolutionError
// when no positive root exists (t >= t_bar, or the slope has the wrong sign).
double solve_switch_time(const Sl2& a, const Sl2& b, double t);

// arcosh(|Phi|/2) / (t + s), or 0 when |Phi| < 2.
double periodic_exponent(const Sl2& a, const Sl2& b, const PeriodPair& p);

// tr(X(t/2, s/2)^2) - tr(X(t, s)).
double doubling_gap(const Sl2& a, const Sl2& b, const PeriodPair& p);
// sh_A(t/2)^2 sh_B(s/2)^2 tr([A,B]^2) / 2.
double doubling_gap_closed_form(const Sl2& a, const Sl2& b, const PeriodPair& p);

// The three switching pairs with cos(lambda t) = cos(mu s) = 0, for
// tr A^2, tr B^2 < 0: (pi/2l, pi/2m), (pi/2l, 3pi/2m), (3pi/2l, pi/2m).
std::array<PeriodPair, 3> imaginary_special_points(const Sl2& a, const Sl2& b);

struct LimitSequence {
  double value = 0.0;  // singular exponent
  std::vector<double> ts;
  std::vector<double> rates;  // periodic_exponent(t, s(t))
  bool monotone = false;      // rates increase as t decreases
  double final_gap = 0.0;     // value - rates.back()
};

// Singular exponent together with the approach l(t, s(t)) -> value along
// t = 2^-k, k = 3..20.  Requires tr([A,B]^2) > 0 and an admissible singular
// control; throws NoSingularError otherwise.
LimitSequence limit_exponent(const Sl2& a, const Sl2& b);

}  // namespace swlyap
