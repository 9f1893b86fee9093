#include <cmath>
#include <numbers>

#include "doctest.h"
#include "support.hpp"
#include "swlyap/errors.hpp"
#include "swlyap/oracle.hpp"
#include "swlyap/sl2.hpp"

using namespace swlyap;
using swlyap::test::Gen;

namespace {

const Sl2 kDiag{1.0, 0.0, 0.0};
const Sl2 kSwap{0.0, 1.0, 1.0};
const Sl2 kRot{0.0, -1.0, 1.0};

bool close(const Mat2& x, const Mat2& y, double tol) { return (x - y).frobenius() <= tol; }

}  // namespace

TEST_CASE("bracket of diag and swap") {
  const Mat2 direct = kDiag.mat() * kSwap.mat() - kSwap.mat() * kDiag.mat();
  const Sl2 k = bracket(kDiag, kSwap);
  CHECK(k.mat() == direct);
  CHECK(k == Sl2{0.0, 2.0, -2.0});
  CHECK(bracket(kDiag, kDiag) == Sl2{});
}

TEST_CASE("trace products") {
  CHECK(trace_product(kDiag, kDiag) == 2.0);
  CHECK(trace_product(kDiag, kSwap) == 0.0);
  const Sl2 b{1.0, -2.0, 1.0};
  CHECK(trace_product(kRot, b) == oracle::trace_of_product(kRot.mat(), b.mat()));
  CHECK(trace_product(kRot, b) == -3.0);
}

TEST_CASE("commutator trace examples") {
  CHECK(commutator_trace_sq(kDiag, kSwap) ==
        doctest::Approx(oracle::commutator_trace_sq_direct(kDiag.mat(), kSwap.mat())));
  CHECK(commutator_trace_sq(kDiag, kSwap) == doctest::Approx(-8.0));
  CHECK(commutator_trace_sq(kSwap, kSwap) == 0.0);
  const Sl2 b{3.0, -2.0, 4.0};
  CHECK(commutator_trace_sq(kDiag, b) == doctest::Approx(oracle::commutator_trace_sq_direct(kDiag.mat(), b.mat())));
  CHECK(commutator_trace_sq(kDiag, b) == doctest::Approx(64.0));
}

TEST_CASE("eigen parameters") {
  auto e = eigen_parameter(kDiag);
  CHECK(e.kind == EigenKind::Real);
  CHECK(e.alpha == doctest::Approx(1.0));
  e = eigen_parameter(kRot);
  CHECK(e.kind == EigenKind::Imaginary);
  CHECK(e.alpha == doctest::Approx(1.0));
  e = eigen_parameter(Sl2{0.0, 1.0, 0.0});
  CHECK(e.kind == EigenKind::Nilpotent);
  CHECK(e.alpha == 0.0);
}

TEST_CASE("expm examples") {
  const double e = std::numbers::e;
  CHECK(close(expm(kDiag, 1.0), Mat2{e, 0.0, 0.0, 1.0 / e}, 1e-14));
  CHECK(close(expm(kRot, std::numbers::pi / 2), Mat2{0.0, -1.0, 1.0, 0.0}, 1e-15));
  CHECK(expm(Sl2{0.0, 1.0, 0.0}, 3.0) == Mat2{1.0, 3.0, 0.0, 1.0});
  CHECK(expm(kDiag, 0.0) == Mat2::identity());
}

TEST_CASE("expm overflow") { CHECK_THROWS_AS(expm(kDiag, 800.0), OverflowError); }

TEST_CASE("basis coordinates examples") {
  const Sl2 k = bracket(kDiag, kSwap);
  const Sl2 m{1.0, 3.0, -1.0};
  // reference: solve the (m11, m12, m21) equations directly
  const auto ref = test::solve3({{{kDiag.m11, kSwap.m11, k.m11}, {kDiag.m12, kSwap.m12, k.m12},
                                  {kDiag.m21, kSwap.m21, k.m21}}},
                                {m.m11, m.m12, m.m21});
  const auto bc = basis_coordinates(m, kDiag, kSwap);
  CHECK(bc.alpha == doctest::Approx(ref[0]));
  CHECK(bc.beta == doctest::Approx(ref[1]));
  CHECK(bc.gamma == doctest::Approx(ref[2]));
  CHECK(bc.alpha == doctest::Approx(1.0));
  CHECK(bc.beta == doctest::Approx(1.0));
  CHECK(bc.gamma == doctest::Approx(1.0));

  auto unit = basis_coordinates(kDiag, kDiag, kSwap);
  CHECK(unit.alpha == doctest::Approx(1.0));
  CHECK(unit.beta == doctest::Approx(0.0).epsilon(1e-15));
  unit = basis_coordinates(k, kDiag, kSwap);
  CHECK(unit.gamma == doctest::Approx(1.0));
  CHECK_THROWS_AS(basis_coordinates(m, kDiag, 2.0 * kDiag), DegenerateBasisError);
}

TEST_CASE("independence examples") {
  CHECK(independence_test(kDiag, kSwap));
  CHECK_FALSE(independence_test(kDiag, 2.0 * kDiag));
  CHECK_FALSE(independence_test(kDiag, Sl2{0.0, 1.0, 0.0}));
}

TEST_CASE("antisymmetry and cyclic trace on random pairs") {
  Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    const Sl2 a = g.sl2();
    const Sl2 b = g.sl2();
    const Sl2 c = g.sl2();
    const Sl2 ab = bracket(a, b);
    const Sl2 ba = bracket(b, a);
    CHECK((ab + ba).frobenius() <= 1e-12 * (1.0 + ab.frobenius()));
    const double t1 = (a.mat() * b.mat() * c.mat()).trace();
    const double t2 = (b.mat() * c.mat() * a.mat()).trace();
    CHECK(std::abs(t1 - t2) <= 1e-12 * (1.0 + std::abs(t1) + 125.0));
    CHECK(trace_product(a, b) == trace_product(b, a));
  }
}

TEST_CASE("commutator identity on 1e4 pairs") {
  Gen g(3);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Sl2 a = g.sl2();
    const Sl2 b = g.sl2();
    const double direct = oracle::commutator_trace_sq_direct(a.mat(), b.mat());
    const auto inv = trace_invariants(a, b);
    const double scale = std::max({std::abs(inv.c * inv.c), std::abs(inv.a * inv.b), 1.0});
    worst = std::max(worst, std::abs(commutator_trace_sq(a, b) - direct) / scale);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("expm against scaled Taylor on every eigen kind") {
  Gen g(5);
  for (int kind : {1, -1, 0}) {
    double worst = 0.0;
    double worst_det = 0.0;
    for (int i = 0; i < 3000; ++i) {
      const Sl2 m = g.sl2_of_kind(kind);
      const double n = m.frobenius();
      if (n == 0.0) continue;
      const double t = g.uniform(-10.0, 10.0) / n;
      const Mat2 x = expm(m, t);
      worst = std::max(worst, oracle::relative_error(x, oracle::expm_taylor(m.mat(), t)));
      worst_det = std::max(worst_det, std::abs(x.det() - 1.0));
    }
    CAPTURE(kind);
    CHECK(worst <= 1e-8);
    CHECK(worst_det <= 1e-9);
  }
}

TEST_CASE("one-parameter group law") {
  Gen g(8);
  for (int i = 0; i < 2000; ++i) {
    const Sl2 m = g.sl2(2.0);
    const double s = g.uniform(-2.0, 2.0);
    const double t = g.uniform(-2.0, 2.0);
    const Mat2 lhs = expm(m, s + t);
    CHECK(oracle::relative_error(expm(m, s) * expm(m, t), lhs) <= 1e-11);
  }
}

TEST_CASE("determinant stays one at large arguments") {
  Gen g(9);
  for (int i = 0; i < 1000; ++i) {
    const Sl2 m = g.sl2_of_kind(1);
    const double alpha = eigen_parameter(m).alpha;
    const double t = g.uniform(0.0, 50.0) / alpha;
    const Mat2 x = expm(m, t);
    // relative to the size of the products entering det
    const double scale = std::max(std::abs(x.m11 * x.m22), std::abs(x.m12 * x.m21));
    CHECK(std::abs(x.det() - 1.0) <= 1e-9 * std::max(1.0, scale));
  }
}

TEST_CASE("small arguments use accurate series") {
  const Sl2 m{1.0, 0.5, -0.25};
  const double t = 1e-9;
  const Mat2 x = expm(m, t);
  const Mat2 ref = oracle::expm_taylor(m.mat(), t);
  CHECK(oracle::relative_error(x, ref) <= 1e-15);
  const auto fc = flow_coefficients(eigen_parameter(m), t);
  CHECK(fc.ch_m1 == doctest::Approx(0.5 * trace_product(m, m) / 2.0 * t * t).epsilon(1e-9));
}

TEST_CASE("basis round trip on random triples") {
  Gen g(13);
  for (int i = 0; i < 2000; ++i) {
    const Sl2 a = g.sl2();
    const Sl2 b = g.sl2();
    if (!independence_test(a, b)) continue;
    const Sl2 m = g.sl2();
    const auto bc = basis_coordinates(m, a, b);
    const Sl2 back = bc.alpha * a + bc.beta * b + bc.gamma * bracket(a, b);
    CHECK((back - m).frobenius() <= 1e-9 * std::max(1.0, m.frobenius()));
  }
}

TEST_CASE("inverse of singular matrix") {
  CHECK_THROWS_AS((Mat2{1.0, 2.0, 2.0, 4.0}.inverse()), SingularMatrixError);
  const Mat2 x{2.0, 1.0, 1.0, 1.0};
  CHECK(close(x * x.inverse(), Mat2::identity(), 1e-15));
}

TEST_CASE("operator norm against eigenvalues of the Gram matrix") {
  Gen g(21);
  for (int i = 0; i < 1000; ++i) {
    const Mat2 x = g.sl2_group(2.0);
    const Mat2 xt{x.m11, x.m21, x.m12, x.m22};
    const Mat2 gm = xt * x;
    const double tr = gm.trace();
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - gm.det()));
    CHECK(x.op_norm() == doctest::Approx(std::sqrt(tr / 2.0 + disc)).epsilon(1e-12));
  }
}
