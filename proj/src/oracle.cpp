#include "swlyap/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace swlyap::oracle {

Mat2 expm_taylor(const Mat2& m, double t) {
  Mat2 x = t * m;
  int squarings = 0;
  const double n = x.frobenius();
  if (n > 0.5) squarings = static_cast<int>(std::ceil(std::log2(n / 0.5)));
  x = std::ldexp(1.0, -squarings) * x;

  Mat2 sum = Mat2::identity();
  Mat2 term = Mat2::identity();
  for (int k = 1; k <= 20; ++k) {
    term = (1.0 / k) * (term * x);
    sum = sum + term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

double trace_of_product(const Mat2& m, const Mat2& n) { return (m * n).trace(); }

double commutator_trace_sq_direct(const Mat2& a, const Mat2& b) {
  const Mat2 k = a * b - b * a;
  return (k * k).trace();
}

double relative_error(const Mat2& x, const Mat2& y, double floor) {
  return (x - y).frobenius() / std::max(y.frobenius(), floor);
}

}  // namespace swlyap::oracle
