#include "bergsense/elliptic.hpp"

#include <doctest.h>

#include <cmath>

#include "bergsense/errors.hpp"
#include "test_helpers.hpp"

using namespace bergsense;
using bergsense::testing::check_close;

TEST_CASE("complete elliptic integral by AGM") {
  // Lemniscatic point: K(1/sqrt(2)) (frozen via independent evaluation).
  CHECK(elliptic_K(std::sqrt(0.5)) == doctest::Approx(1.8540746773013719).epsilon(1e-14));
  CHECK(elliptic_K(0.0) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(elliptic_Kprime(std::sqrt(0.5)) == doctest::Approx(1.8540746773013719).epsilon(1e-14));
  CHECK_THROWS_AS(elliptic_K(1.0), Error);
}

TEST_CASE("carlson R_F") {
  // R_F(x, x, x) = x^(-1/2).
  check_close(carlson_rf(2.0, 2.0, 2.0), 1.0 / std::sqrt(2.0), 1e-14);
  check_close(carlson_rf(cplx(1.0, 1.0), cplx(1.0, 1.0), cplx(1.0, 1.0)),
              1.0 / std::sqrt(cplx(1.0, 1.0)), 1e-13);
  // Homogeneity R_F(t x, t y, t z) = t^(-1/2) R_F(x, y, z).
  const cplx base = carlson_rf(cplx(1.0, 0.3), cplx(2.0, -0.4), 1.0);
  const cplx scaled = carlson_rf(4.0 * cplx(1.0, 0.3), 4.0 * cplx(2.0, -0.4), 4.0);
  check_close(scaled, base / 2.0, 1e-13);
  // Complete integral as a special value: K(k) = R_F(0, 1-k^2, 1).
  const double k = 0.6;
  check_close(carlson_rf(0.0, 1.0 - k * k, 1.0), elliptic_K(k), 1e-13);
}

TEST_CASE("inverse sn") {
  // Small-argument Taylor: arcsn(z) = z + (1+k^2) z^3/6 + O(z^5).
  const double k = 0.4;
  for (cplx z : {cplx(0.01, 0.002), cplx(0.005, 0.01)}) {
    const cplx want = z + (1.0 + k * k) * z * z * z / 6.0;
    check_close(inverse_sn(z, k), want, 1e-10);
  }
  // Rectangle half-period identity: arcsn(i/sqrt(k)) = i K'/2.
  for (double kk : {0.3, 0.6, std::sqrt(0.5), 0.9}) {
    const cplx got = inverse_sn(cplx(0.0, 1.0 / std::sqrt(kk)), kk);
    check_close(got, cplx(0.0, 0.5 * elliptic_Kprime(kk)), 1e-12);
  }
  // arcsn maps the upper half plane into the rectangle (-K, K) x (0, K').
  const double K = elliptic_K(k), Kp = elliptic_Kprime(k);
  for (int i = 0; i < 40; ++i) {
    const cplx z = cplx(-3.0 + 6.0 * (i % 8) / 7.0, 0.1 + 2.5 * (i / 8) / 4.0);
    const cplx u = inverse_sn(z, k);
    CHECK(std::abs(u.real()) < K * (1.0 + 1e-12));
    CHECK(u.imag() > -1e-12);
    CHECK(u.imag() < Kp * (1.0 + 1e-12));
  }
}

TEST_CASE("modulus from aspect ratio") {
  // Square target: 2K/K' = 2 forces K = K', i.e. k = sqrt(1/2).
  CHECK(modulus_from_aspect(2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  for (double aspect : {0.5, 1.0, 3.0, 12.0}) {
    const double k = modulus_from_aspect(aspect);
    CHECK(2.0 * elliptic_K(k) / elliptic_Kprime(k) == doctest::Approx(aspect).epsilon(1e-10));
  }
  CHECK_THROWS_AS(modulus_from_aspect(-1.0), Error);
}
