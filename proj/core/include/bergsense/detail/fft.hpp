#pragma once

#include <vector>

#include "bergsense/types.hpp"

namespace bergsense::detail {

// In-place radix-2 decimation-in-time FFT. Length must be a power of two.
void fft(std::vector<cplx>& a, bool inverse = false);

// Smallest power of two >= n.
int next_pow2(int n);

}  // namespace bergsense::detail
