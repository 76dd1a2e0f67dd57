#include "bergsense/runge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bergsense/errors.hpp"

namespace bergsense {

namespace {

double segment_distance(cplx p, cplx q, cplx z) {
  const cplx d = q - p;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - p);
  double t = ((z - p) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (p + t * d));
}

// Log-space scan: terms t_k = binom(j-1+k, k) 2^-k, remainder after K
// bounded by the geometric majorant t_{K+1} / (1 - r) with
// r = (j+K+1)/(K+2)/2. Degrees run into the thousands along a push, so the
// linear-space quantities overflow/underflow doubles.
int cutoff_from_log_budget(int j, double log_budget) {
  double log_t_next = std::log(0.5 * j);  // log t_1
  for (int K = 0; K <= 200000; ++K) {
    const double ratio = 0.5 * (j + K + 1.0) / (K + 2.0);
    if (ratio < 1.0 && log_t_next - std::log1p(-ratio) <= log_budget) return K;
    log_t_next += std::log(0.5 * (j + K + 1.0) / (K + 2.0));
  }
  fail(errc::budget_exceeded, "recentering truncation would exceed 200000 terms");
}

}  // namespace

cplx RationalApproximant::eval(cplx z) const {
  // Horner in u = 2 delta / (z - pole); |u| <= 1 on the certified region, so
  // the scaled coefficients never amplify.
  const cplx u = 2.0 * delta / (z - pole);
  cplx acc = 0.0;
  for (int j = terms(); j >= 1; --j) acc = (acc + coeffs[static_cast<size_t>(j) - 1]) * u;
  return acc;
}

int recenter_cutoff(int j, double budget) {
  if (!(budget > 0.0)) fail(errc::parameter_error, "tail budget must be positive");
  return cutoff_from_log_budget(j, std::log(budget));
}

std::vector<cplx> recenter(const std::vector<cplx>& coeffs, cplx c, cplx c_next, double delta, double eta,
                           double scale) {
  if (!(delta > 0.0)) fail(errc::parameter_error, "delta must be positive");
  if (!(eta > 0.0)) fail(errc::parameter_error, "eta must be positive");
  if (!(scale > 0.0)) fail(errc::parameter_error, "scale must be positive");
  const double shift_len = std::abs(c - c_next);
  if (shift_len > delta * (1.0 + 1e-12)) fail(errc::step_too_long, "pole shift exceeds delta");
  if (c == c_next) return coeffs;

  int nonzero = 0;
  for (const cplx& q : coeffs)
    if (q != cplx(0.0)) ++nonzero;
  if (nonzero == 0) return coeffs;
  const double log_eta = std::log(eta / nonzero);
  // In the scaled convention, term j contributes |q_j| (scale/(2 delta))^j
  // on the rim |z - c_next| = 2 delta and |q_j| (scale/delta)^j worst case
  // over the region.
  const double log_rim = std::log(scale / (2.0 * delta));
  const double log_worst = std::log(scale / delta);
  const cplx u_shift = (c - c_next) / scale;  // |u_shift| <= delta/scale

  std::vector<cplx> out;
  for (size_t idx = 0; idx < coeffs.size(); ++idx) {
    const cplx q = coeffs[idx];
    if (q == cplx(0.0)) continue;
    const int j = static_cast<int>(idx) + 1;
    const double log_q = std::log(std::abs(q));
    // Dropping the whole term costs at most |q_j| (scale/delta)^j on the
    // validity region; if that fits the per-term budget, keep nothing. This
    // caps the degree cascade across recenterings.
    if (log_q + j * log_worst <= log_eta) continue;
    // Otherwise truncate: |q_j| (scale/(2 delta))^j * tail(K) <= eta_term on
    // |z - c_next| >= 2 delta.
    const int cutoff = cutoff_from_log_budget(j, log_eta - log_q - j * log_rim);
    if (out.size() < idx + static_cast<size_t>(cutoff) + 1)
      out.resize(idx + static_cast<size_t>(cutoff) + 1, cplx(0.0));
    // term_k = q binom(j-1+k, k) u_shift^k, evolved as one product: the
    // binomial alone overflows a double long before the product does.
    cplx term = q;
    for (int k = 0; k <= cutoff; ++k) {
      out[idx + static_cast<size_t>(k)] += term;
      term *= u_shift * (static_cast<double>(j + k) / (k + 1.0));
    }
  }
  // A fully dropped expansion is legal when every term fits the budget.
  if (out.empty()) out.assign(1, cplx(0.0));
  return out;
}

std::vector<cplx> push_pole_stops(const std::vector<cplx>& curve, double delta) {
  if (curve.size() < 2) fail(errc::curve_error, "curve needs at least two points");
  if (!(delta > 0.0)) fail(errc::parameter_error, "delta must be positive");
  if (!(delta < std::abs(curve.front() - curve.back())))
    fail(errc::parameter_error, "delta must be smaller than |a - b|");

  std::vector<double> seg_len(curve.size() - 1);
  double total = 0.0;
  for (size_t i = 0; i + 1 < curve.size(); ++i) {
    seg_len[i] = std::abs(curve[i + 1] - curve[i]);
    total += seg_len[i];
  }
  if (!(total > 0.0)) fail(errc::curve_error, "curve has zero length");

  auto point_at = [&](double s) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 < curve.size(); ++i) {
      if (s <= acc + seg_len[i] || i + 2 == curve.size()) {
        const double t = seg_len[i] > 0.0 ? std::clamp((s - acc) / seg_len[i], 0.0, 1.0) : 0.0;
        return curve[i] + t * (curve[i + 1] - curve[i]);
      }
      acc += seg_len[i];
    }
    return curve.back();
  };

  std::vector<cplx> stops;
  double s = 0.0;
  while (total - s > delta * (1.0 + 1e-12)) {
    s += delta;
    stops.push_back(point_at(s));
    if (stops.size() > 100000) fail(errc::curve_error, "degenerate parametrization: too many stops");
  }
  stops.push_back(curve.back());
  return stops;
}

RationalApproximant push_pole(const std::vector<cplx>& curve, double delta, double eps) {
  if (!(eps > 0.0)) fail(errc::parameter_error, "eps must be positive");
  const std::vector<cplx> stops = push_pole_stops(curve, delta);
  const double eta = eps / static_cast<double>(stops.size());
  const double rim_scale = 2.0 * delta;

  // Rim-scaled from the start: 1/(z - b) = (1/(2 delta)) * u with
  // u = 2 delta/(z - b).
  cplx pole = curve.front();
  std::vector<cplx> coeffs{cplx(1.0 / rim_scale)};
  std::vector<int> step_cutoffs;
  for (const cplx& stop : stops) {
    const size_t before = coeffs.size();
    coeffs = recenter(coeffs, pole, stop, delta, eta, rim_scale);
    step_cutoffs.push_back(static_cast<int>(coeffs.size() > before ? coeffs.size() - before : 0));
    pole = stop;
  }

  RationalApproximant r;
  r.pole = pole;
  r.delta = delta;
  r.curve = curve;
  r.eps = eps;
  r.step_cutoffs = std::move(step_cutoffs);

  // Prune negligible high-order terms; their sup on the certified region is
  // |q_j| 2^j, added back into the certificate.
  const size_t n_terms = coeffs.size();
  const double log_cut = std::log(1e-3 * eps / static_cast<double>(n_terms));
  double discarded = 0.0;
  size_t last = 0;
  for (size_t idx = 0; idx < coeffs.size(); ++idx) {
    if (coeffs[idx] == cplx(0.0)) continue;
    const double log_sup = std::log(std::abs(coeffs[idx])) + static_cast<double>(idx + 1) * std::log(2.0);
    if (log_sup < log_cut) {
      discarded += std::exp(log_sup);
      coeffs[idx] = 0.0;
    } else {
      last = idx;
    }
  }
  coeffs.resize(last + 1);
  r.coeffs = std::move(coeffs);
  r.eps += discarded;
  return r;
}

SensingIdentity runge_weights(const RationalApproximant& r, double boundary_length,
                              const std::vector<cplx>& boundary_samples) {
  if (!(boundary_length > 0.0)) fail(errc::parameter_error, "boundary length must be positive");
  for (const cplx& z : boundary_samples) {
    double d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < r.curve.size(); ++i) d = std::min(d, segment_distance(r.curve[i], r.curve[i + 1], z));
    if (!(d > 2.0 * r.delta))
      fail(errc::parameter_error, "boundary sample enters the 2-delta tube of the push curve");
  }

  SensingIdentity id;
  id.domain = DomainRef{DomainRef::Kind::contour, "runge"};
  id.a = r.pole;
  id.b = r.curve.front();
  id.weights.resize(r.coeffs.size());
  // d_m = A_{m+1}/m! with A_{m+1} = coeffs[m] (2 delta)^{m+1}; the running
  // factor (2 delta)^{m+1}/m! underflows gracefully to exact zeros where the
  // true weights are sub-denormal.
  double factor = 2.0 * r.delta;
  for (size_t m = 0; m < r.coeffs.size(); ++m) {
    if (m > 0) factor *= 2.0 * r.delta / static_cast<double>(m);
    id.weights[m] = r.coeffs[m] * factor;
  }
  id.sup_cert = SupCertificate{r.eps, boundary_length};
  id.provenance = Provenance::runge;
  return id;
}

}  // namespace bergsense
