#pragma once

#include <cstdint>

namespace hypconv {

/// True when x is exactly one of 0, -1, -2, ...
bool is_nonpositive_integer(double x) noexcept;

/// Gamma function for real arguments.  Throws PoleError on 0, -1, -2, ...
double gamma_real(double x);

/// 1/Gamma(x); zero on the pole set instead of throwing.
double rgamma_real(double x) noexcept;

/// Digamma psi(x) = Gamma'(x)/Gamma(x).  Throws PoleError on 0, -1, -2, ...
double digamma_real(double x);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.
double pochhammer(double a, std::uint32_t n) noexcept;

}  // namespace hypconv
