#include "swlyap/periodic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "swlyap/errors.hpp"
#include "swlyap/extremal.hpp"

namespace swlyap {

namespace {

FlowCoefficients guarded_flow(const EigenParameter& ep, double t) {
  if (ep.kind == EigenKind::Real && ep.alpha * std::abs(t) > kPhiOverflowGuard)
    throw OverflowError("|alpha t| = " + std::to_string(ep.alpha * std::abs(t)) +
                        " exceeds the overflow guard");
  return flow_coefficients(ep, t);
}

Mat2 guarded_expm(const Sl2& m, double t) {
  const auto f = guarded_flow(eigen_parameter(m), t);
  return f.ch * Mat2::identity() + f.sh * m.mat();
}

// Phi - 2, accurate when the schedule is short and Phi is close to 2.
double phi_excess(const Sl2& a, const Sl2& b, const PeriodPair& p) {
  const auto fa = guarded_flow(eigen_parameter(a), p.t);
  const auto fb = guarded_flow(eigen_parameter(b), p.s);
  const double c = trace_product(a, b);
  return 2.0 * (fa.ch_m1 * fb.ch_m1 + fa.ch_m1 + fb.ch_m1) + c * fa.sh * fb.sh;
}

}  // namespace

PeriodPair PeriodPair::make(double t, double s) {
  if (!(std::isfinite(t) && std::isfinite(s) && t >= 0.0 && s >= 0.0))
    throw DomainError("period pair must be finite and nonnegative");
  return {t, s};
}

Mat2 monodromy(const Sl2& a, const Sl2& b, const PeriodPair& p) {
  return guarded_expm(a, p.t) * guarded_expm(b, p.s);
}

double phi(const Sl2& a, const Sl2& b, const PeriodPair& p) { return monodromy(a, b, p).trace(); }

double phi_closed_form(const Sl2& a, const Sl2& b, const PeriodPair& p) {
  const auto fa = guarded_flow(eigen_parameter(a), p.t);
  const auto fb = guarded_flow(eigen_parameter(b), p.s);
  return 2.0 * fa.ch * fb.ch + trace_product(a, b) * fa.sh * fb.sh;
}

double switching_residual(const Sl2& a, const Sl2& b, const PeriodPair& p) {
  return (monodromy(a, b, p) * (a - b).mat()).trace();
}

double switching_residual_closed_form(const Sl2& a, const Sl2& b, const PeriodPair& p) {
  const auto inv = trace_invariants(a, b);
  const auto fa = guarded_flow(eigen_parameter(a), p.t);
  const auto fb = guarded_flow(eigen_parameter(b), p.s);
  return (inv.a - inv.c) * fa.sh * fb.ch + (inv.c - inv.b) * fa.ch * fb.sh;
}

SwitchBranch switch_branch(const Sl2& a, const Sl2& b) {
  const auto inv = trace_invariants(a, b);
  if (inv.c == inv.b) throw DegenerateError("tr(AB) = tr(B^2): switching slope undefined");
  SwitchBranch out;
  out.slope0 = (inv.c - inv.a) / (inv.c - inv.b);
  const auto ea = eigen_parameter(a);
  const auto eb = eigen_parameter(b);
  if (ea.kind == EigenKind::Real && eb.kind == EigenKind::Real) {
    const double coeff = eb.alpha / ea.alpha * out.slope0;
    if (coeff > 1.0) out.t_bar = std::atanh(1.0 / coeff) / ea.alpha;
  }
  return out;
}

double solve_switch_time(const Sl2& a, const Sl2& b, double t) {
  if (!(t > 0.0 && std::isfinite(t))) throw DomainError("solve_switch_time: t must be positive");
  const auto inv = trace_invariants(a, b);
  const auto fa = guarded_flow(eigen_parameter(a), t);
  const auto eb = eigen_parameter(b);

  // (c - b) ch_A sh_B(s) = (c - a) sh_A ch_B(s)
  const double p = (inv.c - inv.b) * fa.ch;
  const double q = (inv.c - inv.a) * fa.sh;

  switch (eb.kind) {
    case EigenKind::Real: {
      if (p == 0.0) throw NoSolutionError("switching equation has no positive root");
      const double r = eb.alpha * q / p;  // tanh(mu s)
      if (!(r > 0.0)) throw NoSolutionError("switching slope has the wrong sign");
      if (!(r < 1.0)) throw NoSolutionError("t = " + std::to_string(t) + " is past the blow-up time");
      return std::atanh(r) / eb.alpha;
    }
    case EigenKind::Nilpotent: {
      if (p == 0.0) throw NoSolutionError("switching equation has no positive root");
      const double s = q / p;
      if (!(s > 0.0)) throw NoSolutionError("switching slope has the wrong sign");
      return s;
    }
    case EigenKind::Imaginary: {
      // (p / mu) sin(mu s) - q cos(mu s) = R sin(mu s - phase)
      if (p == 0.0 && q == 0.0) throw NoSolutionError("switching equation is degenerate");
      const double phase = std::atan2(q, p / eb.alpha);
      const double x = phase > 0.0 ? phase : phase + std::numbers::pi;
      return x / eb.alpha;
    }
  }
  throw NoSolutionError("unreachable");
}

double periodic_exponent(const Sl2& a, const Sl2& b, const PeriodPair& p) {
  const double period = p.period();
  if (!(period > 0.0)) throw DomainError("periodic_exponent: t + s must be positive");
  const double excess = phi_excess(a, b, p);
  if (excess >= 0.0) {
    // arcosh(1 + h) = log1p(h + sqrt(h (h + 2)))
    const double h = 0.5 * excess;
    return std::log1p(h + std::sqrt(h * (h + 2.0))) / period;
  }
  const double tr = 2.0 + excess;
  if (tr <= -2.0) return std::acosh(-0.5 * tr) / period;
  return 0.0;
}

double doubling_gap(const Sl2& a, const Sl2& b, const PeriodPair& p) {
  const Mat2 half = monodromy(a, b, {0.5 * p.t, 0.5 * p.s});
  return (half * half).trace() - phi(a, b, p);
}

double doubling_gap_closed_form(const Sl2& a, const Sl2& b, const PeriodPair& p) {
  const auto fa = guarded_flow(eigen_parameter(a), 0.5 * p.t);
  const auto fb = guarded_flow(eigen_parameter(b), 0.5 * p.s);
  return 0.5 * fa.sh * fa.sh * fb.sh * fb.sh * commutator_trace_sq(a, b);
}

std::array<PeriodPair, 3> imaginary_special_points(const Sl2& a, const Sl2& b) {
  const auto ea = eigen_parameter(a);
  const auto eb = eigen_parameter(b);
  if (ea.kind != EigenKind::Imaginary || eb.kind != EigenKind::Imaginary)
    throw DomainError("special switching points need imaginary eigenvalues for A and B");
  const double qa = 0.5 * std::numbers::pi / ea.alpha;
  const double qb = 0.5 * std::numbers::pi / eb.alpha;
  return {PeriodPair{qa, qb}, PeriodPair{qa, 3.0 * qb}, PeriodPair{3.0 * qa, qb}};
}

LimitSequence limit_exponent(const Sl2& a, const Sl2& b) {
  if (!(commutator_trace_sq(a, b) > 0.0))
    throw NoSingularError("tr([A,B]^2) <= 0: switching controls are not optimal");
  const auto sd = singular_data(a, b);
  if (!sd.admissible) throw NoSingularError("singular control u* is outside [0, 1]");

  LimitSequence out;
  out.value = sd.exponent;
  for (int k = 3; k <= 20; ++k) {
    const double t = std::ldexp(1.0, -k);
    const double s = solve_switch_time(a, b, t);
    out.ts.push_back(t);
    out.rates.push_back(periodic_exponent(a, b, {t, s}));
  }
  out.monotone = true;
  for (std::size_t i = 1; i < out.rates.size(); ++i)
    if (out.rates[i] < out.rates[i - 1] - 1e-13 * out.value) out.monotone = false;
  out.final_gap = out.value - out.rates.back();
  return out;
}

}  // namespace swlyap
