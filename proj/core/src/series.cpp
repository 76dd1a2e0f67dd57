#include "bergsense/series.hpp"

#include <algorithm>
#include <cmath>

#include "bergsense/errors.hpp"

namespace bergsense {

namespace {

void require_same_center(const TruncatedSeries& p, const TruncatedSeries& q) {
  if (p.center != q.center) fail(errc::mismatched_centers, "series have different expansion points");
}

bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

TruncatedSeries::TruncatedSeries(cplx center_, std::vector<cplx> coeffs_)
    : center(center_), coeffs(std::move(coeffs_)) {
  if (coeffs.empty()) fail(errc::order_range, "series needs at least the constant coefficient");
  for (const cplx& c : coeffs)
    if (!is_finite(c)) fail(errc::order_range, "series coefficient is not finite");
}

TruncatedSeries TruncatedSeries::identity(int order, cplx center) {
  if (order < 1) fail(errc::order_range, "identity jet needs order >= 1");
  std::vector<cplx> c(static_cast<size_t>(order) + 1, cplx(0.0));
  c[1] = 1.0;
  return TruncatedSeries(center, std::move(c));
}

TruncatedSeries TruncatedSeries::constant(cplx value, int order, cplx center) {
  if (order < 0) fail(errc::order_range, "order must be nonnegative");
  std::vector<cplx> c(static_cast<size_t>(order) + 1, cplx(0.0));
  c[0] = value;
  return TruncatedSeries(center, std::move(c));
}

cplx TruncatedSeries::eval(cplx z) const {
  const cplx x = z - center;
  cplx acc = 0.0;
  for (int j = order(); j >= 0; --j) acc = acc * x + coeffs[static_cast<size_t>(j)];
  return acc;
}

TruncatedSeries series_add(const TruncatedSeries& p, const TruncatedSeries& q) {
  require_same_center(p, q);
  const int n = std::min(p.order(), q.order());
  std::vector<cplx> c(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) c[static_cast<size_t>(j)] = p.coeffs[static_cast<size_t>(j)] + q.coeffs[static_cast<size_t>(j)];
  return TruncatedSeries(p.center, std::move(c));
}

TruncatedSeries series_multiply(const TruncatedSeries& p, const TruncatedSeries& q) {
  require_same_center(p, q);
  const int n = std::min(p.order(), q.order());
  std::vector<cplx> c(static_cast<size_t>(n) + 1, cplx(0.0));
  for (int i = 0; i <= std::min(n, p.order()); ++i) {
    const cplx pi = p.coeffs[static_cast<size_t>(i)];
    if (pi == cplx(0.0)) continue;
    const int jmax = std::min(n - i, q.order());
    for (int j = 0; j <= jmax; ++j) c[static_cast<size_t>(i + j)] += pi * q.coeffs[static_cast<size_t>(j)];
  }
  return TruncatedSeries(p.center, std::move(c));
}

TruncatedSeries series_scale(const TruncatedSeries& p, cplx s) {
  std::vector<cplx> c = p.coeffs;
  for (cplx& v : c) v *= s;
  return TruncatedSeries(p.center, std::move(c));
}

TruncatedSeries series_differentiate(const TruncatedSeries& p) {
  if (p.order() == 0) return TruncatedSeries::constant(0.0, 0, p.center);
  std::vector<cplx> c(static_cast<size_t>(p.order()));
  for (int j = 1; j <= p.order(); ++j) c[static_cast<size_t>(j - 1)] = static_cast<double>(j) * p.coeffs[static_cast<size_t>(j)];
  return TruncatedSeries(p.center, std::move(c));
}

TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner) {
  if (outer.order() != inner.order())
    fail(errc::order_range, "compose requires equal truncation orders");
  const cplx offset = inner.coeffs[0] - outer.center;
  if (std::abs(offset) > 1e-14 * (1.0 + std::abs(outer.center)))
    fail(errc::mismatched_centers, "inner constant term must equal outer's expansion point");

  const int n = outer.order();
  // x := inner - outer.center has zero constant term; Horner in x.
  TruncatedSeries x = inner;
  x.center = inner.center;
  x.coeffs[0] = 0.0;
  TruncatedSeries acc = TruncatedSeries::constant(outer.coeffs[static_cast<size_t>(n)], n, inner.center);
  for (int j = n - 1; j >= 0; --j) {
    acc = series_multiply(acc, x);
    acc.coeffs[0] += outer.coeffs[static_cast<size_t>(j)];
  }
  return acc;
}

TruncatedSeries series_reciprocal(const TruncatedSeries& p) {
  if (p.coeffs[0] == cplx(0.0)) fail(errc::singular_map, "reciprocal of a series vanishing at its center");
  const int n = p.order();
  std::vector<cplx> c(static_cast<size_t>(n) + 1, cplx(0.0));
  c[0] = 1.0 / p.coeffs[0];
  for (int j = 1; j <= n; ++j) {
    cplx acc = 0.0;
    for (int i = 1; i <= j; ++i) acc += p.coeffs[static_cast<size_t>(i)] * c[static_cast<size_t>(j - i)];
    c[static_cast<size_t>(j)] = -acc / p.coeffs[0];
  }
  return TruncatedSeries(p.center, std::move(c));
}

namespace {

TruncatedSeries truncate_to(const TruncatedSeries& p, int order) {
  std::vector<cplx> c(p.coeffs.begin(), p.coeffs.begin() + order + 1);
  return TruncatedSeries(p.center, std::move(c));
}

TruncatedSeries pad_to(const TruncatedSeries& p, int order) {
  std::vector<cplx> c = p.coeffs;
  c.resize(static_cast<size_t>(order) + 1, cplx(0.0));
  return TruncatedSeries(p.center, std::move(c));
}

}  // namespace

TruncatedSeries series_revert(const TruncatedSeries& p) {
  if (p.center != cplx(0.0)) fail(errc::mismatched_centers, "revert expects a jet centered at 0");
  if (p.coeffs[0] != cplx(0.0)) fail(errc::singular_map, "revert requires zero constant term");
  if (p.order() < 1 || p.coeffs[1] == cplx(0.0)) fail(errc::singular_map, "revert requires a nonzero linear term");

  const int target = p.order();
  const TruncatedSeries pd_full = series_differentiate(pad_to(p, target + 1));  // order = target

  // q correct through coefficient `cur`; each Newton step doubles that.
  TruncatedSeries q(p.center, {cplx(0.0), 1.0 / p.coeffs[1]});
  int cur = 1;
  while (cur < target) {
    const int next = std::min(2 * cur + 1, target);
    q = pad_to(q, next);
    TruncatedSeries err = series_compose(truncate_to(p, next), q);  // p(q(w)) - w
    err.coeffs[1] -= 1.0;
    const TruncatedSeries dpq = series_compose(truncate_to(pd_full, next), q);
    const TruncatedSeries step = series_multiply(err, series_reciprocal(dpq));
    q = series_add(q, series_scale(step, -1.0));
    cur = next;
  }
  q.coeffs[0] = 0.0;
  return q;
}

cplx series_eval_derive(const TruncatedSeries& p, cplx z, int m) {
  if (m < 0 || m > p.order()) fail(errc::order_range, "derivative order exceeds truncation order");
  const cplx x = z - p.center;
  cplx acc = 0.0;
  for (int j = p.order(); j >= m; --j) {
    acc = acc * x + p.coeffs[static_cast<size_t>(j)] * falling_ratio(j, j - m);
  }
  return acc;
}

double coeff_growth_rate(const TruncatedSeries& p) {
  double rate = 0.0;
  for (int j = 1; j <= p.order(); ++j) {
    const double a = std::abs(p.coeffs[static_cast<size_t>(j)]);
    if (a > 0.0) rate = std::max(rate, std::pow(a, 1.0 / j));
  }
  return rate;
}

}  // namespace bergsense
