#pragma once

#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "bergsense/types.hpp"

namespace bergsense::testing {

inline void check_close(cplx got, cplx want, double tol) {
  CAPTURE(got.real());
  CAPTURE(got.imag());
  CAPTURE(want.real());
  CAPTURE(want.imag());
  CHECK(std::abs(got - want) <= tol);
}

inline cplx random_unit_cplx(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  return {unif(rng), unif(rng)};
}

}  // namespace bergsense::testing
