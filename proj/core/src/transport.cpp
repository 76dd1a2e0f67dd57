#include "bergsense/transport.hpp"

#include <cmath>

#include "bergsense/errors.hpp"

namespace bergsense {

ConformalMap as_map(const TruncatedSeries& jet) {
  return ConformalMap{
      [jet](cplx w) { return jet.eval(w); },
      [jet](cplx w) { return series_eval_derive(jet, w, 1); },
  };
}

TransportMatrix beta_matrix(const TruncatedSeries& F, int N) {
  if (N < 0) fail(errc::order_range, "order must be nonnegative");
  if (F.order() < N + 1) fail(errc::order_range, "transport needs the map jet to order N+1");
  if (F.coeffs[1] == cplx(0.0)) fail(errc::singular_map, "map jet has vanishing derivative at 0");

  // S(x) = sum_{j>=1} F_j x^j, T(x) = S'(x); both truncated at x^N.
  std::vector<cplx> s(static_cast<size_t>(N) + 1, cplx(0.0));
  std::vector<cplx> t(static_cast<size_t>(N) + 1, cplx(0.0));
  for (int j = 1; j <= N; ++j) s[static_cast<size_t>(j)] = F.coeffs[static_cast<size_t>(j)];
  for (int j = 0; j <= N; ++j) t[static_cast<size_t>(j)] = static_cast<double>(j + 1) * F.coeffs[static_cast<size_t>(j) + 1];
  const TruncatedSeries S(0.0, std::move(s));

  TransportMatrix tm;
  tm.order = N;
  tm.source_jet = F;
  tm.gamma.resize(static_cast<size_t>(N) + 1);
  for (int m = 0; m <= N; ++m) tm.gamma[static_cast<size_t>(m)].assign(static_cast<size_t>(m) + 1, cplx(0.0));

  // cur = S^n * T, built incrementally; S^n has valuation n, so the matrix is
  // lower-triangular by construction.
  TruncatedSeries cur(0.0, std::move(t));
  for (int n = 0; n <= N; ++n) {
    for (int m = n; m <= N; ++m)
      tm.gamma[static_cast<size_t>(m)][static_cast<size_t>(n)] = falling_ratio(m, n) * cur.coeffs[static_cast<size_t>(m)];
    if (n < N) cur = series_multiply(cur, S);
  }
  return tm;
}

ProbePreimage solve_B(const ConformalMap& map, cplx b) {
  const double scale = std::max(1.0, std::abs(b));
  const double tol = 1e-13 * scale;

  // 32 coarse starts: 4 radii x 8 angles.
  constexpr double kRadii[] = {0.3, 0.6, 0.85, 0.95};
  bool saw_critical = false;
  for (double r : kRadii) {
    for (int q = 0; q < 8; ++q) {
      cplx B = r * std::polar(1.0, 2.0 * kPi * q / 8.0);
      bool converged = false;
      for (int it = 0; it < 100; ++it) {
        const cplx residual = map.value(B) - b;
        if (std::abs(residual) <= tol) { converged = true; break; }
        const cplx d = map.deriv(B);
        if (std::abs(d) < 1e-14) { saw_critical = true; break; }
        cplx step = residual / d;
        // Backtrack so the iterate stays in the disc.
        double damp = 1.0;
        cplx candidate = B - step;
        int back = 0;
        while (std::abs(candidate) >= 0.999999 && back < 40) {
          damp *= 0.5;
          candidate = B - damp * step;
          ++back;
        }
        if (back >= 40) break;
        B = candidate;
      }
      if (converged) {
        const cplx d = map.deriv(B);
        if (std::abs(d) < 1e-14) fail(errc::critical_point, "map derivative vanishes at the preimage");
        return ProbePreimage{B, 1.0 / d};
      }
    }
  }
  if (saw_critical) fail(errc::critical_point, "Newton ran into a critical point of the map");
  fail(errc::point_not_in_probe, "no preimage of b found in the disc");
}

SensingIdentity transport_identity(const SensingIdentity& disc_id, const TruncatedSeries& F, cplx fprime_b,
                                   const std::string& probe_label) {
  if (disc_id.provenance != Provenance::taylor && disc_id.provenance != Provenance::gram_optimal)
    fail(errc::parameter_error, "transport expects a taylor or gram-optimal disc identity");
  if (disc_id.a != cplx(0.0)) fail(errc::parameter_error, "transport expects a = 0 on the disc side");
  if (!disc_id.l2_bound) fail(errc::parameter_error, "disc identity carries no L2 certificate");
  const int N = disc_id.order();
  if (F.order() < N + 1) fail(errc::order_range, "map jet order must be at least N+1");

  const TransportMatrix tm = beta_matrix(F, N);

  SensingIdentity out;
  out.domain = DomainRef{DomainRef::Kind::probe, probe_label};
  out.a = F.coeffs[0];
  out.b = F.eval(disc_id.b);
  out.weights.assign(static_cast<size_t>(N) + 1, cplx(0.0));
  for (int n = 0; n <= N; ++n) {
    cplx acc = 0.0;
    for (int m = n; m <= N; ++m) acc += disc_id.weights[static_cast<size_t>(m)] * tm.at(m, n);
    out.weights[static_cast<size_t>(n)] = fprime_b * acc;
  }
  out.l2_bound = std::abs(fprime_b) * *disc_id.l2_bound;
  out.provenance = Provenance::transported;
  out.warnings = disc_id.warnings;
  return out;
}

AreaEstimate probe_area(const TruncatedSeries& F) {
  AreaEstimate est;
  double sum = 0.0;
  for (int j = 1; j <= F.order(); ++j) sum += j * std::norm(F.coeffs[static_cast<size_t>(j)]);
  est.value = kPi * sum;
  est.remainder_estimate = kPi * F.order() * std::norm(F.coeffs[static_cast<size_t>(F.order())]) * 10.0;
  est.truncation_flag = est.value > 0.0 && est.remainder_estimate > 1e-6 * est.value;
  return est;
}

}  // namespace bergsense
