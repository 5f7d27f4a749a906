#pragma once

// Exact Racah-formula kernels. Factorials are kept as prime-exponent vectors;
// alternating sums are carried out in big integers after pulling out the
// common prime content of all terms.

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace costrat::detail {

using BigInt = boost::multiprecision::cpp_int;

/// Largest integer argument of a factorial the kernels may request.
inline constexpr int kMaxFactorialArg = 1024;

/// sign * multiplier * sqrt(prod_p p^square_exponents[p]).
struct SignedSqrtRational {
  int sign = 0;
  BigInt multiplier = 0;
  std::vector<int> square_exponents;

  bool is_zero() const { return sign == 0; }
};

SignedSqrtRational operator*(const SignedSqrtRational& a, const SignedSqrtRational& b);

/// Single terminal rounding to the nearest double.
double to_double(const SignedSqrtRational& x);

/// Exact Clebsch-Gordan coefficient; arguments are twice-values and assumed
/// admissible (triangle, projections, m1 + m2 = m3).
SignedSqrtRational clebsch_gordan_exact(int tj1, int tm1, int tj2, int tm2, int tj3, int tm3);

/// Exact 6j symbol; arguments are twice-values, all four triads admissible.
SignedSqrtRational six_j_exact(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6);

/// Multiplies x by the (positive) integer n.
SignedSqrtRational scale(SignedSqrtRational x, int n);

}  // namespace costrat::detail
