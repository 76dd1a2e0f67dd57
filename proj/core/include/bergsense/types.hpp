#pragma once

#include <complex>
#include <numbers>

namespace bergsense {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Running-product factorial in double precision. Hard-capped: 171! overflows
// a double, and nothing in this library gets anywhere near that.
double factorial(int n);

// Product n*(n-1)*...*(k+1) = n!/k!, 0 <= k <= n, as a double.
double falling_ratio(int n, int k);

// z^k by repeated multiplication. std::pow(complex, int) routes through
// exp(k log z) and NaNs at z = 0, k = 0; this does not.
cplx ipow(cplx z, int k);

}  // namespace bergsense
