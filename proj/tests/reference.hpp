#pragma once

// Independent reference evaluations for the tests: plain long double Gauss
// sums, no transformations from the library.

#include <cmath>
#include <complex>

namespace hypconv::testing {

/// Term-by-term Gauss sum.  Meant for |z| <= 1/2.
inline std::complex<double> brute_series(double a, double b, double c, std::complex<double> z) {
  using lc = std::complex<long double>;
  lc sum = 1.0L, term = 1.0L;
  for (int n = 0; n < 10000; ++n) {
    term *= lc((a + n) * (b + n) / ((c + n) * (n + 1.0L))) * lc(z);
    sum += term;
    if (std::abs(term) < 1e-24L * std::abs(sum)) break;
  }
  return std::complex<double>(sum);
}

/// F(a,b;c;-1) = 2^{-a} F(a, c-b; c; 1/2).
inline double brute_at_minus1(double a, double b, double c) {
  return std::pow(2.0, -a) * brute_series(a, c - b, c, 0.5).real();
}

/// (4-b-c)/2 + ((c-2)/2) F(1,b;c;-1)/F(2,b;c;-1), the a = 1, c >= 2 value.
inline double a1_case1_reference(double b, double c) {
  return (4.0 - b - c) / 2.0 + (c - 2.0) / 2.0 * brute_at_minus1(1, b, c) / brute_at_minus1(2, b, c);
}

}  // namespace hypconv::testing
