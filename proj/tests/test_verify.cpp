#include "bergsense/verify.hpp"

#include <doctest.h>

#include <random>

#include "bergsense/errors.hpp"
#include "test_helpers.hpp"

using namespace bergsense;
using bergsense::testing::check_close;
using bergsense::testing::random_unit_cplx;

TEST_CASE("cauchy_deriv") {
  check_close(cauchy_deriv([](cplx z) { return std::exp(z); }, 0.0, 0.5, 1, 64), 1.0, 1e-12);
  check_close(cauchy_deriv([](cplx) { return cplx(3.7); }, 0.2, 0.3, 2, 64), 0.0, 1e-14);
  check_close(cauchy_deriv([](cplx z) { return z * z * z; }, 0.0, 0.5, 3, 64), 6.0, 1e-12);

  CHECK_THROWS_AS(cauchy_deriv([](cplx z) { return z; }, 0.0, 0.5, 40, 128), Error);
}

TEST_CASE("cauchy_deriv and fourier_partials agree with symbolic derivatives") {
  std::mt19937_64 rng(71);
  Polynomial h;
  h.coeffs.resize(21);
  for (auto& c : h.coeffs) c = random_unit_cplx(rng);

  // Agreement in the circle-normalized metric |error| rho^m / m!: the
  // trapezoid sum is spectrally exact, so only rounding noise remains, and
  // raw derivative values grow like m!/rho^m.
  for (double rho : {0.25, 0.5}) {
    const CircleSampler s = CircleSampler::sample([&h](cplx z) { return h.eval(z); }, 0.1, rho, 256);
    const double hsup = h.sup_on_circle(0.1, rho);
    for (int m = 0; m <= 20; ++m) {
      const cplx want = h.derivative(0.1, m);
      const double norm_err = std::abs(cauchy_deriv(s, m) - want) * std::pow(rho, m) / factorial(m);
      CHECK(norm_err <= 1e-10 * (1.0 + hsup));
    }
  }

  // Harmonic partials of u = Re h from circle samples, same metric.
  auto u = [&h](cplx z) { return h.eval(z).real(); };
  const cplx a(0.05, -0.1);
  const double rho = 0.5;
  const auto partials = fourier_partials(u, a, rho, 12, 512);
  const std::vector<cplx> hd = h.derivatives(a, 12);
  CHECK(partials[0].first == doctest::Approx(hd[0].real()).epsilon(1e-10));
  for (int m = 1; m <= 12; ++m) {
    const double fac = std::pow(rho, m) / factorial(m);
    CHECK(std::abs(partials[m].first - hd[m].real()) * fac <= 1e-10);
    CHECK(std::abs(partials[m].second - -hd[m].imag()) * fac <= 1e-10);
  }
}

TEST_CASE("fourier_partials on closed forms") {
  // u = Re z^2 = x^2 - y^2 about 0.
  {
    const auto p = fourier_partials([](cplx z) { return (z * z).real(); }, 0.0, 0.5, 3, 256);
    CHECK(p[2].first == doctest::Approx(2.0).epsilon(1e-12));   // d2u/dx2
    CHECK(std::abs(p[2].second) < 1e-12);                       // dx dy
  }
  // u = Re z^3.
  {
    const auto p = fourier_partials([](cplx z) { return (z * z * z).real(); }, 0.0, 0.5, 3, 256);
    CHECK(p[3].first == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(std::abs(p[3].second) < 1e-11);
  }
  // u = Im z = y: first-pair d/dy entry is 1.
  {
    const auto p = fourier_partials([](cplx z) { return z.imag(); }, 0.0, 0.5, 1, 256);
    CHECK(std::abs(p[1].first) < 1e-13);
    CHECK(p[1].second == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("lambda quadrature agrees with the closed-form tail norm") {
  for (double babs : {0.3, 0.5, 0.8}) {
    for (int N : {1, 5, 15, 26}) {
      const SensingIdentity id = disc_identity_at_order(babs, N);
      const double quad = lambda_l2_quadrature(id);
      const double closed = error_tail_l2(babs, N);
      CHECK(quad == doctest::Approx(closed).epsilon(1e-8));
    }
  }

  // Frozen spot value at b = 0.5, N = 1.
  CHECK(lambda_l2_quadrature(disc_identity_at_order(0.5, 1)) ==
        doctest::Approx(0.29735401935879518).epsilon(1e-8));

  // Doubling the quadrature changes nothing at this scale.
  const SensingIdentity id = disc_identity_at_order(0.5, 5);
  CHECK(std::abs(lambda_l2_quadrature(id, 200, 512) - lambda_l2_quadrature(id, 400, 1024)) <= 1e-10);
}

TEST_CASE("random bounded harmonic sampler") {
  // Constant boundary data: u == M everywhere.
  {
    const HarmonicSampler u(0.0, 2.0, {cplx(1.5)});
    CHECK(u(cplx(0.3, -0.6)) == doctest::Approx(1.5));
  }

  const HarmonicSampler u = random_bounded_harmonic(7, 2.0, cplx(0.5, 0.0), 3.0);
  // Normalized boundary sup over 4096 samples equals M.
  double sup = 0.0;
  for (int q = 0; q < 4096; ++q)
    sup = std::max(sup, std::abs(u(cplx(0.5, 0.0) + 3.0 * std::polar(1.0, 2.0 * kPi * q / 4096.0))));
  CHECK(sup == doctest::Approx(2.0).epsilon(1e-12));

  // Determinism.
  const HarmonicSampler v = random_bounded_harmonic(7, 2.0, cplx(0.5, 0.0), 3.0);
  for (int i = 0; i < 8; ++i) {
    const cplx z = 2.0 * std::polar(1.0, 2.0 * kPi * i / 8.0);
    CHECK(u(z) == v(z));
  }

  // Exact partials match the circle-integral measurement. Rounding in the
  // m-th Fourier coefficient is amplified by m!/rho^m, which sets the noise
  // floor past the sampler's polynomial degree.
  const auto exact = u.partials(cplx(1.0, 0.5), 10);
  const auto measured = fourier_partials([&u](cplx z) { return u(z); }, cplx(1.0, 0.5), 0.5, 10, 512);
  for (int m = 0; m <= 10; ++m) {
    const double scale = 1.0 + std::abs(exact[m].first) + std::abs(exact[m].second);
    const double noise = factorial(m) * std::pow(0.5, -m) * 1e-13;
    CHECK(std::abs(exact[m].first - measured[m].first) <= 1e-10 * scale + noise);
    CHECK(std::abs(exact[m].second - measured[m].second) <= 1e-10 * scale + noise);
  }
}

TEST_CASE("residual reports") {
  // Disc taylor identity on polynomials within degree: exactness.
  {
    const SensingIdentity id = disc_identity_at_order(0.3, 10);
    const ResidualReport rep = report_polynomial_l2(id, 100, 10, 123);
    CHECK(rep.violations == 0);
    CHECK(rep.max_residual <= 1e-10);
  }
  // Beyond-degree family: residuals nonzero but certified.
  {
    const SensingIdentity id = disc_identity_at_order(0.5, 8);
    const ResidualReport rep = report_polynomial_l2(id, 200, 40, 42);
    CHECK(rep.violations == 0);
    CHECK(rep.max_residual > 0.0);
    CHECK(rep.max_residual <= rep.certificate * (1.0 + 1e-8));
  }
  // Determinism of the report values.
  {
    const SensingIdentity id = disc_identity_at_order(0.5, 8);
    const ResidualReport a = report_polynomial_l2(id, 50, 40, 7);
    const ResidualReport b = report_polynomial_l2(id, 50, 40, 7);
    CHECK(a.max_residual == b.max_residual);
    CHECK(a.mean_residual == b.mean_residual);
  }
}
