#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "swlyap/errors.hpp"
#include "swlyap/exponent.hpp"
#include "swlyap/periodic.hpp"

using namespace swlyap;
using swlyap::test::Gen;

namespace {

const Sl2 kDiag{1.0, 0.0, 0.0};
const Sl2 kSwap{0.0, 1.0, 1.0};
const Sl2 kRot{0.0, -1.0, 1.0};
const Sl2 kCase1B{3.0, -2.0, 4.0};
const Sl2 kCase3B{1.0, -2.0, 1.0};
constexpr double kPi = std::numbers::pi;

double product_trace(const Sl2& a, const Sl2& b, double t, double s) {
  return (expm(a, t) * expm(b, s)).trace();
}

}  // namespace

TEST_CASE("period pair validation") {
  CHECK_NOTHROW(PeriodPair::make(0.0, 0.0));
  CHECK_THROWS_AS(PeriodPair::make(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(PeriodPair::make(1.0, INFINITY), DomainError);
}

TEST_CASE("phi examples") {
  for (double t : {0.3, 1.0, 2.5})
    for (double s : {0.1, 1.7}) {
      const auto p = PeriodPair::make(t, s);
      CHECK(phi(kDiag, kSwap, p) == doctest::Approx(2.0 * std::cosh(t) * std::cosh(s)));
      CHECK(phi(kDiag, kSwap, p) == doctest::Approx(product_trace(kDiag, kSwap, t, s)));
    }
  CHECK(phi(kDiag, kSwap, PeriodPair::make(0, 0)) == 2.0);
  CHECK(phi(kRot, kCase3B, PeriodPair::make(kPi / 2, 3 * kPi / 2)) == doctest::Approx(3.0));
  CHECK(phi_closed_form(kRot, kCase3B, PeriodPair::make(kPi / 2, 3 * kPi / 2)) == doctest::Approx(3.0));
}

TEST_CASE("phi closed form agrees with the product on 1e4 samples") {
  Gen g(41);
  for (int i = 0; i < 10000; ++i) {
    const Sl2 a = g.sl2_of_kind(g.integer(-1, 1), 2.0);
    const Sl2 b = g.sl2_of_kind(g.integer(-1, 1), 2.0);
    const auto p = PeriodPair::make(g.uniform(0.0, 3.0), g.uniform(0.0, 3.0));
    const double direct = product_trace(a, b, p.t, p.s);
    const double scale = expm(a, p.t).frobenius() * expm(b, p.s).frobenius();
    CHECK(std::abs(phi_closed_form(a, b, p) - direct) <= 1e-9 * std::max(1.0, scale));
    CHECK(std::abs(phi(a, b, p) - direct) <= 1e-12 * std::max(1.0, scale));
  }
}

TEST_CASE("phi overflow guard") {
  CHECK_THROWS_AS(phi(kDiag, kSwap, PeriodPair::make(750.0, 1.0)), OverflowError);
}

TEST_CASE("switching residual examples") {
  CHECK(switching_residual(kDiag, kSwap, PeriodPair::make(0, 0)) == 0.0);
  CHECK(switching_residual(kDiag, kSwap, PeriodPair::make(1, 1)) == doctest::Approx(0.0));
  CHECK(switching_residual(kDiag, kSwap, PeriodPair::make(2, 1)) == doctest::Approx(2.0 * std::sinh(1.0)));
}

TEST_CASE("switching residual is the difference of the partial derivatives") {
  Gen g(42);
  for (int i = 0; i < 1000; ++i) {
    const Sl2 a = g.sl2(1.5);
    const Sl2 b = g.sl2(1.5);
    const double t = g.uniform(0.1, 1.5);
    const double s = g.uniform(0.1, 1.5);
    const double h = 1e-5;
    const double dt = (product_trace(a, b, t + h, s) - product_trace(a, b, t - h, s)) / (2 * h);
    const double ds = (product_trace(a, b, t, s + h) - product_trace(a, b, t, s - h)) / (2 * h);
    const auto p = PeriodPair::make(t, s);
    const double r = switching_residual(a, b, p);
    CHECK(r == doctest::Approx(dt - ds).epsilon(1e-6).scale(10.0));
    CHECK(switching_residual_closed_form(a, b, p) == doctest::Approx(r).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("switch time examples") {
  for (double t : {0.01, 0.5, 2.0, 5.0}) {
    CHECK(solve_switch_time(kDiag, kCase1B, t) == doctest::Approx(t).epsilon(1e-10));
    CHECK(solve_switch_time(kDiag, kSwap, t) == doctest::Approx(t).epsilon(1e-10));
  }
}

TEST_CASE("switch time roots zero the residual") {
  Gen g(43);
  int roots = 0;
  for (int i = 0; i < 5000; ++i) {
    const Sl2 a = g.sl2(2.0);
    const Sl2 b = g.sl2(2.0);
    const double t = g.uniform(0.01, 2.0);
    double s = 0.0;
    try {
      s = solve_switch_time(a, b, t);
    } catch (const NoSolutionError&) {
      continue;
    } catch (const DegenerateError&) {
      continue;
    }
    CHECK(s > 0.0);
    const auto p = PeriodPair::make(t, s);
    double scale = 1.0;
    try {
      scale = std::max(1.0, expm(a, t).frobenius() * expm(b, s).frobenius() *
                                std::max(a.frobenius(), b.frobenius()));
    } catch (const OverflowError&) {
      continue;
    }
    CHECK(std::abs(switching_residual(a, b, p)) <= 1e-9 * scale);
    ++roots;
  }
  CHECK(roots > 1000);
}

TEST_CASE("switch time slope near zero") {
  Gen g(44);
  for (int i = 0; i < 300; ++i) {
    const Sl2 a = g.sl2_of_kind(1, 2.0);
    const Sl2 b = g.sl2_of_kind(1, 2.0);
    const auto inv = trace_invariants(a, b);
    const double slope = (inv.c - inv.a) / (inv.c - inv.b);
    if (!(slope > 0.05 && slope < 20.0)) continue;
    const double t = 1e-5;
    try {
      CHECK(solve_switch_time(a, b, t) / t == doctest::Approx(slope).epsilon(1e-4));
    } catch (const NoSolutionError&) {
      FAIL("no root at small t with positive slope");
    }
  }
}

TEST_CASE("no switch time past t_bar for negative commutator trace") {
  Gen g(45);
  int hits = 0;
  for (int i = 0; i < 3000 && hits < 200; ++i) {
    const Sl2 a = g.sl2_of_kind(1, 2.0);
    const Sl2 b = g.sl2_of_kind(1, 2.0);
    if (commutator_trace_sq(a, b) >= -1e-3) continue;
    const auto br = switch_branch(a, b);
    if (!br.t_bar) continue;
    const auto inv = trace_invariants(a, b);
    const double lam = std::sqrt(inv.a / 2);
    const double mu = std::sqrt(inv.b / 2);
    const double ref = std::atanh(lam * (inv.c - inv.b) / (mu * (inv.c - inv.a))) / lam;
    CHECK(*br.t_bar == doctest::Approx(ref).epsilon(1e-12));
    const double tb = *br.t_bar;
    CHECK_THROWS_AS(solve_switch_time(a, b, tb * (1 + 1e-8) + 1e-8), NoSolutionError);
    CHECK_NOTHROW(solve_switch_time(a, b, tb * (1 - 1e-6)));
    ++hits;
  }
  CHECK(hits > 50);
}

TEST_CASE("periodic exponent examples") {
  CHECK(periodic_exponent(kRot, kCase3B, PeriodPair::make(kPi / 2, 3 * kPi / 2)) ==
        doctest::Approx(std::acosh(1.5) / (2 * kPi)));
  const Mat2 x = expm(kDiag, 1.0) * expm(kSwap, 1.0);
  CHECK(periodic_exponent(kDiag, kSwap, PeriodPair::make(1, 1)) ==
        doctest::Approx(std::log(test::spectral_radius_det1(x)) / 2.0));
  CHECK(periodic_exponent(kDiag, kSwap, PeriodPair::make(1, 1)) ==
        doctest::Approx(std::acosh(std::cosh(1.0) * std::cosh(1.0)) / 2.0));
  // elliptic monodromy
  CHECK(periodic_exponent(kRot, kRot, PeriodPair::make(0.5, 0.5)) == 0.0);
  CHECK_THROWS_AS(periodic_exponent(kDiag, kSwap, PeriodPair::make(0, 0)), DomainError);
}

TEST_CASE("periodic exponent is the log spectral radius per unit time") {
  Gen g(46);
  for (int i = 0; i < 3000; ++i) {
    const Sl2 a = g.sl2(2.0);
    const Sl2 b = g.sl2(2.0);
    const auto p = PeriodPair::make(g.uniform(0.05, 2.0), g.uniform(0.05, 2.0));
    const Mat2 x = expm(a, p.t) * expm(b, p.s);
    const double ref = std::log(test::spectral_radius_det1(x)) / p.period();
    CHECK(periodic_exponent(a, b, p) == doctest::Approx(ref).epsilon(1e-7).scale(1e-3));
  }
}

TEST_CASE("doubling gap examples and closed form") {
  Gen g(47);
  CHECK(doubling_gap(kDiag, kDiag, PeriodPair::make(1.3, 0.4)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(doubling_gap(kDiag, kCase1B, PeriodPair::make(1, 1)) > 0.0);
  CHECK(doubling_gap(kDiag, kSwap, PeriodPair::make(1, 1)) < 0.0);
  CHECK(periodic_exponent(kDiag, kCase1B, PeriodPair::make(0.5, 0.5)) >
        periodic_exponent(kDiag, kCase1B, PeriodPair::make(1, 1)));
  CHECK(periodic_exponent(kDiag, kSwap, PeriodPair::make(0.5, 0.5)) <
        periodic_exponent(kDiag, kSwap, PeriodPair::make(1, 1)));
  for (int i = 0; i < 2000; ++i) {
    const Sl2 a = g.sl2(2.0);
    const Sl2 b = g.sl2(2.0);
    const auto p = PeriodPair::make(g.uniform(0.0, 2.0), g.uniform(0.0, 2.0));
    const Mat2 half = expm(a, p.t / 2) * expm(b, p.s / 2);
    const double ref = (half * half).trace() - (expm(a, p.t) * expm(b, p.s)).trace();
    const double cf = doubling_gap_closed_form(a, b, p);
    const double scale = std::max(1.0, half.frobenius() * half.frobenius());
    CHECK(std::abs(cf - ref) <= 1e-9 * scale);
    CHECK(std::abs(doubling_gap(a, b, p) - ref) <= 1e-12 * scale);
  }
}

TEST_CASE("imaginary special points") {
  const auto pts = imaginary_special_points(kRot, kCase3B);
  CHECK(pts[0].t == doctest::Approx(kPi / 2));
  CHECK(pts[1].s == doctest::Approx(3 * kPi / 2));
  CHECK(pts[2].t == doctest::Approx(3 * kPi / 2));
  for (const auto& p : pts) {
    CHECK(std::abs(phi(kRot, kCase3B, p)) == doctest::Approx(3.0));
    CHECK(switching_residual(kRot, kCase3B, p) == doctest::Approx(0.0).scale(1.0));
  }
}

TEST_CASE("limit sequence approaches the singular exponent from below") {
  const auto ls = limit_exponent(kDiag, kCase1B);
  CHECK(ls.value == doctest::Approx(std::sqrt(2.0)));
  CHECK(ls.monotone);
  CHECK(ls.final_gap >= 0.0);
  CHECK(ls.final_gap <= 1e-5);
  CHECK(ls.ts.size() == 18);
  CHECK_THROWS_AS(limit_exponent(kRot, kCase3B), NoSingularError);
  CHECK_THROWS_AS(limit_exponent(kDiag, kSwap), NoSingularError);
}

TEST_CASE("switch branch slope") {
  const auto br = switch_branch(kDiag, kCase1B);
  CHECK(br.slope0 == doctest::Approx(1.0));
  CHECK_FALSE(br.t_bar.has_value());
}

TEST_CASE("doubling order holds for positive traces and can fail for negative ones") {
  Gen g(48);
  int positive = 0;
  int negative_violations = 0;
  for (int i = 0; i < 40000; ++i) {
    const Sl2 a = g.sl2_of_kind(1, 2.0);
    const Sl2 b = g.sl2_of_kind(1, 2.0);
    const double k = commutator_trace_sq(a, b);
    if (std::abs(k) < 1e-6) continue;
    const auto p = PeriodPair::make(g.uniform(0.05, 2.0), g.uniform(0.05, 2.0));
    const auto h = PeriodPair::make(p.t / 2, p.s / 2);
    const double full = phi(a, b, p);
    if (std::abs(full) <= 2.0 || std::abs(phi(a, b, h)) <= 2.0) continue;
    const double lf = periodic_exponent(a, b, p);
    const double lh = periodic_exponent(a, b, h);
    const bool ordered = k > 0 ? lh > lf : lh < lf;
    if (full > 0.0) {
      CHECK(ordered);
      ++positive;
    } else if (!ordered) {
      CHECK(k > 0.0);
      ++negative_violations;
    }
  }
  CHECK(positive > 10000);
  CHECK(negative_violations > 0);
}
