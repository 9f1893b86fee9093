#pragma once

// Reference computations that share no code path with the closed forms:
// they work on general Mat2 values and never look at eigenvalue kinds.

#include "swlyap/sl2.hpp"

namespace swlyap::oracle {

// Scaling and squaring around a 20-term Taylor sum.
Mat2 expm_taylor(const Mat2& m, double t);

// tr(M N) by full 2x2 multiplication.
double trace_of_product(const Mat2& m, const Mat2& n);

// tr([A,B]^2) by forming the commutator as a general 2x2 matrix.
double commutator_trace_sq_direct(const Mat2& a, const Mat2& b);

// Relative Frobenius distance ||x - y|| / max(||y||, floor).
double relative_error(const Mat2& x, const Mat2& y, double floor = 1e-300);

}  // namespace swlyap::oracle
