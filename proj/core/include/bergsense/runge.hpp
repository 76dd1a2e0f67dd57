#pragma once

#include <vector>

#include "bergsense/disc.hpp"
#include "bergsense/types.hpp"

namespace bergsense {

/// Polynomial in 1/(z - pole) in rim-scaled form:
///   value(z) = sum_j coeffs[j-1] * (2 delta / (z - pole))^j.
/// The scaled coefficients A_j (2 delta)^-j stay O(sup) for every degree;
/// the raw Laurent coefficients A_j underflow doubles once j * log(2 delta)
/// passes ~-700, so they are never materialized. `eps` certifies
/// |1/(z - b) - value(z)| <= eps on the set of points at distance > 2 delta
/// from the push curve.
struct RationalApproximant {
  cplx pole{0.0};
  std::vector<cplx> coeffs;  // rim-scaled A_1..A_J
  double delta = 0.0;
  std::vector<cplx> curve;  // polyline from b to pole
  double eps = 0.0;
  std::vector<int> step_cutoffs;  // max truncation length per recentering

  int terms() const { return static_cast<int>(coeffs.size()); }
  cplx eval(cplx z) const;
};

// Laurent coefficients at pole c re-expanded about c_next (|c - c_next| <=
// delta), truncated so the total tail on |z - c_next| >= 2 delta is <= eta.
// Coefficients are read and written in the convention
//   sum_j coeffs[j-1] (scale/(z - c))^j;
// scale = 1 gives the plain Laurent coefficients, scale = 2 delta the
// rim-scaled form used along a push.
std::vector<cplx> recenter(const std::vector<cplx>& coeffs, cplx c, cplx c_next, double delta, double eta,
                           double scale = 1.0);

// Per-term truncation cutoff used by recenter: smallest K with the geometric
// tail bound sum_{k>K} binom(j-1+k, k) 2^-k <= budget (ratio 1/2 regime).
int recenter_cutoff(int j, double budget);

// Walks the polyline from b to a in arclength steps of delta, recentering
// 1/(z - b) at each stop with tolerance eps/(steps+1).
RationalApproximant push_pole(const std::vector<cplx>& curve, double delta, double eps);

// The recentering stops the walk will take (excluding b, ending at a).
std::vector<cplx> push_pole_stops(const std::vector<cplx>& curve, double delta);

// Contour-quadrature identity from the approximant: d_m = A_{m+1}/m!,
// certificate eps * boundary_length * sup|h| / (2 pi). If boundary samples
// are given they must all be at distance > 2 delta from the curve.
SensingIdentity runge_weights(const RationalApproximant& r, double boundary_length,
                              const std::vector<cplx>& boundary_samples = {});

}  // namespace bergsense
