#pragma once

#include <vector>

#include "bergsense/types.hpp"

namespace bergsense {

/// Truncated complex power series: the jet of a map about `center`,
/// coeffs[j] = F^(j)(center)/j!. Plain value type; every operation returns a
/// fresh series and leaves its inputs untouched.
struct TruncatedSeries {
  cplx center{0.0};
  std::vector<cplx> coeffs;  // length order()+1

  TruncatedSeries() = default;
  TruncatedSeries(cplx center_, std::vector<cplx> coeffs_);

  int order() const { return static_cast<int>(coeffs.size()) - 1; }

  static TruncatedSeries identity(int order, cplx center = 0.0);
  static TruncatedSeries constant(cplx value, int order, cplx center = 0.0);

  // Evaluates the truncated polynomial at z (Horner).
  cplx eval(cplx z) const;
};

TruncatedSeries series_add(const TruncatedSeries& p, const TruncatedSeries& q);
TruncatedSeries series_multiply(const TruncatedSeries& p, const TruncatedSeries& q);
TruncatedSeries series_scale(const TruncatedSeries& p, cplx s);

// Formal derivative; order drops by one (constant input stays order 0).
TruncatedSeries series_differentiate(const TruncatedSeries& p);

// Jet of outer(inner(w)) to the shared order. Requires inner's constant term
// to equal outer's expansion point.
TruncatedSeries series_compose(const TruncatedSeries& outer, const TruncatedSeries& inner);

// Reciprocal jet 1/p to p's order; requires p(center) != 0.
TruncatedSeries series_reciprocal(const TruncatedSeries& p);

// Compositional inverse q of p (p0 = 0, p1 != 0, center 0):
// series_compose(p, q) is the identity jet to the same order. Newton
// iteration on jets with order doubling.
TruncatedSeries series_revert(const TruncatedSeries& p);

// m-th derivative of the truncated polynomial at z.
cplx series_eval_derive(const TruncatedSeries& p, cplx z, int m);

// Largest |coeffs[j]|^(1/j) over j >= 1; a growth ratio above ~10 suggests the
// jet is being used outside its radius. Diagnostic only.
double coeff_growth_rate(const TruncatedSeries& p);

}  // namespace bergsense
