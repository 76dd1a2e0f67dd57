#include "bergsense/probe.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "bergsense/elliptic.hpp"
#include "bergsense/errors.hpp"
#include "test_helpers.hpp"

using namespace bergsense;
using bergsense::testing::check_close;

namespace {

OmegaSpec rect_omega(double x0, double x1, double y0, double y1) {
  OmegaSpec omega;
  omega.contains = [=](cplx z) { return z.real() > x0 && z.real() < x1 && z.imag() > y0 && z.imag() < y1; };
  omega.boundary_distance = [=](cplx z) {
    return std::min(std::min(z.real() - x0, x1 - z.real()), std::min(z.imag() - y0, y1 - z.imag()));
  };
  return omega;
}

ProbeSpec arc_probe_spec() {
  ProbeSpec spec;
  spec.waypoints = {cplx(-1.25, -0.1), cplx(-1.0, 0.0), cplx(0.0, 0.25), cplx(1.0, 0.0), cplx(1.25, -0.1)};
  spec.idx_a = 1;
  spec.idx_b = 3;
  spec.degree = 3;
  spec.jet_order = 24;
  spec.omega = rect_omega(-2.0, 2.0, -1.0, 1.0);
  return spec;
}

}  // namespace

TEST_CASE("rect map basics") {
  const RectMap rm(0.1, 0.2);

  // Conjugation symmetry.
  for (cplx w : {cplx(0.3, 0.4), cplx(-0.5, 0.2), cplx(0.1, -0.7)}) {
    check_close(rm.value(std::conj(w)), std::conj(rm.value(w)), 1e-12);
  }
  // Disc center goes to the rectangle center (1/2, 0).
  check_close(rm.value(0.0), cplx(0.5, 0.0), 1e-10);

  // Image stays in the open rectangle.
  for (int i = 0; i < 64; ++i) {
    const cplx w = 0.95 * std::polar(1.0, 2.0 * kPi * i / 64.0);
    const cplx z = rm.value(w);
    CHECK(z.real() > -0.1);
    CHECK(z.real() < 1.1);
    CHECK(std::abs(z.imag()) < 0.2);
  }

  // Aspect is honored: scale * K' = height.
  CHECK(rm.scale() * rm.complete_Kprime() == doctest::Approx(0.4).epsilon(1e-12));

  // Real preimage round trip on the real segment.
  for (double t : {-0.05, 0.1, 0.5, 0.9, 1.05}) {
    const double alpha = rm.real_preimage(t);
    CHECK(rm.value(alpha).real() == doctest::Approx(t).epsilon(1e-10));
    CHECK(std::abs(rm.value(alpha).imag()) < 1e-12);
  }
}

TEST_CASE("rect map conformality: derivative matches central differences") {
  const RectMap rm(0.1, 0.15);
  const double h = 1e-6;
  for (cplx w : {cplx(0.2, 0.3), cplx(-0.4, -0.1), cplx(0.0, 0.5), cplx(0.6, 0.0)}) {
    const cplx d = rm.deriv(w);
    const cplx dx = (rm.value(w + h) - rm.value(w - h)) / (2.0 * h);
    const cplx dy = (rm.value(w + cplx(0.0, h)) - rm.value(w - cplx(0.0, h))) / (2.0 * h * cplx(0.0, 1.0));
    check_close(dx, d, 1e-8 * (1.0 + std::abs(d)));
    check_close(dy, d, 1e-8 * (1.0 + std::abs(d)));
  }
}

TEST_CASE("fit_spine") {
  // Collinear waypoints, degree 1: exact affine interpolation.
  {
    const std::vector<cplx> w = {cplx(-0.5, -0.5), cplx(0.0, 0.0), cplx(0.5, 0.5), cplx(1.0, 1.0)};
    const SpineFit fit = fit_spine(w, 1, 2, 1);
    CHECK(fit.poly.order() == 1);
    check_close(fit.poly.eval(fit.t_a), w[1], 1e-13);
    check_close(fit.poly.eval(fit.t_b), w[2], 1e-13);
    // whole line reproduced
    check_close(fit.poly.eval(0.0), w[0], 1e-12);
  }
  // Five points on a circular arc, degree 3: constraints to 1e-12 and a
  // small measured deviation from the arc.
  {
    std::vector<cplx> w;
    for (int i = 0; i < 5; ++i) w.push_back(std::polar(1.0, kPi * (0.2 + 0.15 * i)));
    const SpineFit fit = fit_spine(w, 1, 3, 3);
    CHECK(std::abs(fit.poly.eval(fit.t_a) - w[1]) <= 1e-12 * 2.0);
    CHECK(std::abs(fit.poly.eval(fit.t_b) - w[3]) <= 1e-12 * 2.0);
    double max_dev = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const cplx p = fit.poly.eval(cplx(i / 100.0, 0.0));
      max_dev = std::max(max_dev, std::abs(std::abs(p) - 1.0));
    }
    CHECK(max_dev < 0.01);
  }
  // a or b at an endpoint parameter is infeasible.
  {
    const std::vector<cplx> w = {cplx(0.0), cplx(0.5), cplx(1.0)};
    CHECK_THROWS_AS(fit_spine(w, 0, 1, 2), Error);
    CHECK_THROWS_AS(fit_spine(w, 1, 2, 2), Error);
  }
}

TEST_CASE("extract_jet") {
  // Entire polynomial map: coefficients recovered exactly.
  {
    const TruncatedSeries p(0.0, {cplx(0.2, 0.1), cplx(1.0), cplx(0.0, -0.3), cplx(0.05)});
    const TruncatedSeries jet = extract_jet([&p](cplx w) { return p.eval(w); }, p.coeffs[0], 10);
    for (int j = 0; j <= 3; ++j) check_close(jet.coeffs[j], p.coeffs[j], 1e-12);
    for (int j = 4; j <= 10; ++j) check_close(jet.coeffs[j], 0.0, 1e-12);
  }
  // Map with a pole inside the sampling circle: two-radius gate trips.
  CHECK_THROWS_AS(extract_jet([](cplx w) { return 1.0 / (cplx(0.75) - w); }, 4.0 / 3.0, 12), Error);
}

TEST_CASE("probe build on a gentle arc inside a rectangle") {
  const ProbeDomain probe = build_probe(arc_probe_spec());

  CHECK(probe.checks.pass());
  CHECK(probe.checks.containment_checked);
  check_close(probe.a, cplx(-1.0, 0.0), 1e-12);
  check_close(probe.b, cplx(1.0, 0.0), 1e-12);

  // F_0 = a exactly, F_1 != 0, jet order as requested.
  CHECK(probe.jet.coeffs[0] == probe.a);
  CHECK(std::abs(probe.jet.coeffs[1]) > 0.0);
  CHECK(probe.jet.order() >= 24);

  // map(0) = a by construction of the center shift.
  check_close(probe.map(0.0), probe.a, 1e-10);

  // Jet-map coherence at |w| = 0.3.
  for (int i = 0; i < 16; ++i) {
    const cplx w = 0.3 * std::polar(1.0, 2.0 * kPi * i / 16.0);
    check_close(probe.jet.eval(w), probe.map(w), 1e-9);
  }

  // Exact area is positive and the jet-based estimate is in its vicinity.
  CHECK(probe.area > 0.0);
  const AreaEstimate est = probe_area(probe.jet);
  CHECK(est.value > 0.0);
  CHECK(est.value < probe.area * 1.05);
  CHECK(est.value > probe.area * 0.5);

  // map derivative agrees with central differences.
  const ConformalMap phi = probe.as_conformal();
  const double h = 1e-6;
  for (cplx w : {cplx(0.2, 0.1), cplx(-0.3, 0.4)}) {
    const cplx d = phi.deriv(w);
    const cplx fd = (phi.value(w + h) - phi.value(w - h)) / (2.0 * h);
    check_close(fd, d, 1e-7 * (1.0 + std::abs(d)));
  }
}

TEST_CASE("probe geometry estimates") {
  const ProbeDomain probe = build_probe(arc_probe_spec());
  const OmegaSpec omega = rect_omega(-2.0, 2.0, -1.0, 1.0);

  const double d1 = boundary_distance_estimate(probe, omega.boundary_distance);
  CHECK(d1 > 0.0);
  // The probe hugs the spine, which keeps ~0.7 clearance; d1 must not
  // exceed the clearance of the spine itself.
  CHECK(d1 < 1.0);

  const double L = path_length_bound(probe.spine, probe.rect, probe.t_a);
  // Must dominate the straight-line distance from a to b.
  CHECK(L >= 2.0);

  // Affine probe: exact area matches |P'|^2 * rectangle area.
  {
    const std::vector<cplx> w = {cplx(-0.5, 0.0), cplx(0.0, 0.0), cplx(0.5, 0.0), cplx(1.0, 0.0)};
    const SpineFit fit = fit_spine(w, 1, 2, 1);
    const Rect rect{0.1, 0.2};
    const double deriv = std::abs(series_eval_derive(fit.poly, cplx(0.5), 1));
    CHECK(spine_area(fit.poly, rect) ==
          doctest::Approx(deriv * deriv * rect.width() * rect.height()).epsilon(1e-12));
  }
}

TEST_CASE("linear spine jet against the series-composition oracle") {
  ProbeSpec spec;
  spec.waypoints = {cplx(-1.2, 0.0), cplx(-1.0, 0.0), cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(1.2, 0.0)};
  spec.idx_a = 1;
  spec.idx_b = 3;
  spec.degree = 1;
  spec.jet_order = 16;
  spec.sigma = 0.25;
  const ProbeDomain probe = build_probe(spec);

  // For a straight spine towards b, all jet coefficients are real multiples
  // of (b - a) (the inner map has real coefficients by symmetry).
  const cplx dir = probe.b - probe.a;
  for (int j = 1; j <= 16; ++j) {
    const cplx ratio = probe.jet.coeffs[j] / dir;
    CHECK(std::abs(ratio.imag()) < 1e-9);
  }

  // Independent route: jet of psi about alpha composed with the jet of the
  // disc automorphism m0, then pushed through the affine spine. The psi jet
  // is sampled on a contracted circle that stays inside the disc.
  const RectMap rm(probe.rect.mu, probe.rect.sigma);
  const double alpha = probe.center_shift;
  const int n = 16;
  const double contraction = 0.45 * (1.0 - std::abs(alpha));
  TruncatedSeries psi_at_alpha =
      extract_jet([&rm, alpha, contraction](cplx w) { return rm.value(alpha + w * contraction); },
                  rm.value(alpha), n, 0.8, 0.7, 1e-8);
  for (int j = 1; j <= n; ++j) psi_at_alpha.coeffs[j] *= std::pow(contraction, -j);
  psi_at_alpha.center = alpha;

  std::vector<cplx> m0(static_cast<size_t>(n) + 1);
  m0[0] = alpha;
  for (int j = 1; j <= n; ++j) m0[static_cast<size_t>(j)] = (1.0 - alpha * alpha) * std::pow(-alpha, j - 1);
  const TruncatedSeries inner(0.0, std::move(m0));

  const TruncatedSeries tau_jet = series_compose(psi_at_alpha, inner);  // psi(m0(w)) about 0
  // phi = P(tau) with affine P = p0 + p1 tau
  const cplx p1 = probe.spine.coeffs[1];
  for (int j = 1; j <= 8; ++j) {
    check_close(probe.jet.coeffs[j], p1 * tau_jet.coeffs[j], 1e-6 * (1.0 + std::abs(probe.jet.coeffs[j])));
  }
}

TEST_CASE("check_probe failure modes") {
  // Hairpin spine: P' vanishes inside the widened rectangle and the winding
  // test sees the fold.
  {
    // P(t) = t + 5(t - 0.5)^3 has critical points at 0.5 +/- 0.258i.
    TruncatedSeries spine(0.0, {cplx(-0.625), cplx(4.75), cplx(-7.5), cplx(5.0)});
    const Rect wide{0.1, 0.35};
    const ProbeChecks checks = check_probe(spine, wide, nullptr, nullptr, 1024);
    CHECK_FALSE(checks.spine_deriv_pass);
    CHECK_FALSE(checks.injectivity_pass);
    // The same spine on a thin rectangle is fine.
    const Rect thin{0.1, 0.05};
    const ProbeChecks ok = check_probe(spine, thin, nullptr, nullptr, 1024);
    CHECK(ok.spine_deriv_pass);
    CHECK(ok.injectivity_pass);
  }
  // Containment failure reports the offending point.
  {
    const std::vector<cplx> w = {cplx(-0.6, 0.0), cplx(-0.5, 0.0), cplx(0.5, 0.0), cplx(0.6, 0.0)};
    const SpineFit fit = fit_spine(w, 1, 2, 1);
    const Rect rect{0.1, 0.2};
    const RectMap rm(rect.mu, rect.sigma);
    auto disc_map = [&](cplx ww) { return fit.poly.eval(rm.value(ww)); };
    // Omega too small to hold the probe.
    const OmegaSpec omega = rect_omega(-0.55, 0.55, -0.5, 0.5);
    const ProbeChecks checks = check_probe(fit.poly, rect, disc_map, omega.contains, 2048);
    CHECK(checks.containment_checked);
    CHECK_FALSE(checks.containment_pass);
    CHECK(checks.containment_failures > 0);
    // Wide enough Omega passes.
    const OmegaSpec big = rect_omega(-2.0, 2.0, -1.0, 1.0);
    const ProbeChecks ok = check_probe(fit.poly, rect, disc_map, big.contains, 2048);
    CHECK(ok.pass());
  }
}

TEST_CASE("build_probe shrinks sigma until the checks pass") {
  ProbeSpec spec = arc_probe_spec();
  // Force a start that violates containment vertically.
  spec.sigma = 1.6;
  const ProbeDomain probe = build_probe(spec);
  CHECK(probe.checks.pass());
  CHECK(probe.sigma_halvings > 0);
  CHECK(probe.rect.sigma < 1.6);
}
