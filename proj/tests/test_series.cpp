#include "bergsense/series.hpp"

#include <doctest.h>

#include <random>

#include "bergsense/errors.hpp"
#include "test_helpers.hpp"

using namespace bergsense;
using bergsense::testing::check_close;
using bergsense::testing::random_unit_cplx;

namespace {

// Independent plain Cauchy product used as the oracle for multiply/compose.
std::vector<cplx> naive_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, size_t order) {
  std::vector<cplx> c(order + 1, cplx(0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size() && i + j <= order; ++j) c[i + j] += a[i] * b[j];
  return c;
}

TruncatedSeries make(std::vector<cplx> coeffs) { return TruncatedSeries(0.0, std::move(coeffs)); }

}  // namespace

TEST_CASE("series arithmetic basics") {
  // (1+z)(1-z) = 1 - z^2
  const TruncatedSeries p = make({1.0, 1.0, 0.0});
  const TruncatedSeries q = make({1.0, -1.0, 0.0});
  const TruncatedSeries prod = series_multiply(p, q);
  check_close(prod.coeffs[0], 1.0, 0.0);
  check_close(prod.coeffs[1], 0.0, 0.0);
  check_close(prod.coeffs[2], -1.0, 0.0);

  // scale(2) on z + z^2
  const TruncatedSeries s = series_scale(make({0.0, 1.0, 1.0}), 2.0);
  check_close(s.coeffs[1], 2.0, 0.0);
  check_close(s.coeffs[2], 2.0, 0.0);

  // (z+z^2)^2 truncated to order 3 -> z^2 + 2z^3 (hand Cauchy product)
  const TruncatedSeries r = series_multiply(make({0.0, 1.0, 1.0, 0.0}), make({0.0, 1.0, 1.0, 0.0}));
  check_close(r.coeffs[2], 1.0, 0.0);
  check_close(r.coeffs[3], 2.0, 0.0);

  CHECK_THROWS_AS(series_add(make({1.0}), TruncatedSeries(1.0, {cplx(1.0)})), Error);
}

TEST_CASE("series multiply matches naive Cauchy product on random inputs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> a(31), b(31);
    for (auto& v : a) v = random_unit_cplx(rng);
    for (auto& v : b) v = random_unit_cplx(rng);
    const TruncatedSeries prod = series_multiply(make(a), make(b));
    const std::vector<cplx> want = naive_mul(a, b, 30);
    for (int j = 0; j <= 30; ++j) check_close(prod.coeffs[j], want[j], 1e-13);
  }
}

TEST_CASE("series multiply is commutative and associative") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cplx> a(31), b(31), c(31);
    for (auto& v : a) v = random_unit_cplx(rng);
    for (auto& v : b) v = random_unit_cplx(rng);
    for (auto& v : c) v = random_unit_cplx(rng);
    const TruncatedSeries A = make(a), B = make(b), C = make(c);
    const TruncatedSeries ab = series_multiply(A, B);
    const TruncatedSeries ba = series_multiply(B, A);
    const TruncatedSeries ab_c = series_multiply(ab, C);
    const TruncatedSeries a_bc = series_multiply(A, series_multiply(B, C));
    for (int j = 0; j <= 30; ++j) {
      check_close(ab.coeffs[j], ba.coeffs[j], 1e-13);
      check_close(ab_c.coeffs[j], a_bc.coeffs[j], 1e-13);
    }
  }
}

TEST_CASE("series composition") {
  // outer = z + z^2, inner = 2z -> 2z + 4z^2
  const TruncatedSeries c1 = series_compose(make({0.0, 1.0, 1.0}), make({0.0, 2.0, 0.0}));
  check_close(c1.coeffs[1], 2.0, 0.0);
  check_close(c1.coeffs[2], 4.0, 0.0);

  // identity inner leaves outer unchanged
  std::mt19937_64 rng(13);
  std::vector<cplx> a(9);
  for (auto& v : a) v = random_unit_cplx(rng);
  const TruncatedSeries c2 = series_compose(make(a), TruncatedSeries::identity(8));
  for (int j = 0; j <= 8; ++j) check_close(c2.coeffs[j], a[j], 1e-14);

  // jet of 1/(1-z) composed with z + z^2: 1 + z + 2z^2 + 3z^3 (hand expansion)
  const TruncatedSeries c3 = series_compose(make({1.0, 1.0, 1.0, 1.0}), make({0.0, 1.0, 1.0, 0.0}));
  check_close(c3.coeffs[0], 1.0, 1e-14);
  check_close(c3.coeffs[1], 1.0, 1e-14);
  check_close(c3.coeffs[2], 2.0, 1e-14);
  check_close(c3.coeffs[3], 3.0, 1e-14);

  CHECK_THROWS_AS(series_compose(make({1.0, 1.0}), make({0.5, 1.0})), Error);
}

TEST_CASE("series reversion") {
  // revert(2z) = z/2
  const TruncatedSeries lin = series_revert(make({0.0, 2.0}));
  check_close(lin.coeffs[1], 0.5, 0.0);

  // revert(z - z^2) has Catalan coefficients; oracle is the fixed-point
  // iteration z <- w + z^2 run with a plain polynomial square.
  {
    std::vector<cplx> z(5, cplx(0.0));
    for (int it = 0; it < 8; ++it) {
      std::vector<cplx> sq = naive_mul(z, z, 4);
      z = sq;
      z[1] += 1.0;  // + w
    }
    const TruncatedSeries rev = series_revert(make({0.0, 1.0, -1.0, 0.0, 0.0}));
    for (int j = 0; j <= 4; ++j) check_close(rev.coeffs[j], z[j], 1e-12);
    // frozen: w + w^2 + 2w^3 + 5w^4
    check_close(rev.coeffs[2], 1.0, 1e-12);
    check_close(rev.coeffs[3], 2.0, 1e-12);
    check_close(rev.coeffs[4], 5.0, 1e-12);
  }

  CHECK_THROWS_AS(series_revert(make({0.0, 0.0, 1.0})), Error);
  CHECK_THROWS_AS(series_revert(make({1.0, 1.0})), Error);
}

TEST_CASE("revert-compose round trip at order 20") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<cplx> a(21);
    a[0] = 0.0;
    a[1] = std::polar(mag(rng), ang(rng));
    // Geometric decay in units of |p_1| keeps the inverse jet tame; without
    // it the (1/|p_1|)^j growth at order 20 eats the tolerance.
    double scale = std::abs(a[1]);
    for (size_t j = 2; j < a.size(); ++j) {
      scale *= 0.3 * std::abs(a[1]);
      a[j] = scale * random_unit_cplx(rng);
    }
    const TruncatedSeries p = make(a);
    const TruncatedSeries round = series_compose(p, series_revert(p));
    for (int j = 0; j <= 20; ++j) {
      const cplx want = (j == 1) ? cplx(1.0) : cplx(0.0);
      check_close(round.coeffs[j], want, 1e-10);
    }
  }
}

TEST_CASE("series_eval_derive") {
  // p = z^2, m = 2 at 0 -> 2
  check_close(series_eval_derive(make({0.0, 0.0, 1.0}), 0.0, 2), 2.0, 0.0);
  // p = 1 + 3z, m = 0 at 2 -> 7
  check_close(series_eval_derive(make({1.0, 3.0}), 2.0, 0), 7.0, 0.0);
  // p = z + z^3, m = 1 at 0.5 -> 1.75
  check_close(series_eval_derive(make({0.0, 1.0, 0.0, 1.0}), 0.5, 1), 1.75, 1e-15);

  CHECK_THROWS_AS(series_eval_derive(make({1.0, 1.0}), 0.0, 2), Error);

  // agreement with formal differentiation then evaluation
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cplx> a(13);
    for (auto& v : a) v = random_unit_cplx(rng);
    const TruncatedSeries p = make(a);
    const cplx z = 0.7 * random_unit_cplx(rng);
    TruncatedSeries d = p;
    for (int m = 0; m <= 4; ++m) {
      const cplx want = d.eval(z);
      check_close(series_eval_derive(p, z, m), want, 1e-12 * (1.0 + std::abs(want)));
      d = series_differentiate(d);
    }
  }
}

TEST_CASE("coefficient growth diagnostic") {
  CHECK(coeff_growth_rate(make({1.0, 1.0, 1.0})) == doctest::Approx(1.0));
  CHECK(coeff_growth_rate(make({0.0, 0.0, 400.0})) == doctest::Approx(20.0));
}
