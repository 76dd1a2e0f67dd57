#pragma once

#include <functional>

#include "bergsense/disc.hpp"
#include "bergsense/series.hpp"
#include "bergsense/types.hpp"

namespace bergsense {

// Evaluatable conformal map with derivative; how probe maps and jets are
// handed to the Newton solver.
struct ConformalMap {
  std::function<cplx(cplx)> value;
  std::function<cplx(cplx)> deriv;
};

ConformalMap as_map(const TruncatedSeries& jet);

/// Lower-triangular kernel-transport matrix: gamma[m][n] carries the disc
/// kernel derivative K_0^m through the map jet onto the probe's K_a^n family.
/// gamma_{m,n} = (m!/n!) [x^m] (S(x)^n T(x)) with S = sum_{j>=1} F_j x^j and
/// T = S', the coefficientwise conjugate of the matrix produced by
/// differentiating the kernel transformation formula.
struct TransportMatrix {
  int order = 0;
  std::vector<std::vector<cplx>> gamma;  // gamma[m][n], n <= m
  TruncatedSeries source_jet;

  cplx at(int m, int n) const { return n > m ? cplx(0.0) : gamma[static_cast<size_t>(m)][static_cast<size_t>(n)]; }
};

// Builds the transport matrix from the probe map jet F (F(0) = a). Requires
// F order >= N+1 and a nonzero linear coefficient.
TransportMatrix beta_matrix(const TruncatedSeries& F, int N);

// Solves F(B) = b by damped Newton from a coarse grid of disc starts.
// Returns B and 1/F'(B).
struct ProbePreimage {
  cplx B;
  cplx fprime_b;  // derivative of the Riemann map f = F^-1 at b
};
ProbePreimage solve_B(const ConformalMap& map, cplx b);

// Carries a disc identity (a = 0, b = B) onto the probe domain F(disc):
// weights d~_n = fprime_b * sum_{m>=n} d_m gamma_{m,n} and an exact L2
// certificate |fprime_b| * l2_bound (unitary change of variables).
SensingIdentity transport_identity(const SensingIdentity& disc_id, const TruncatedSeries& F, cplx fprime_b,
                                   const std::string& probe_label = "probe");

struct AreaEstimate {
  double value = 0.0;
  double remainder_estimate = 0.0;
  bool truncation_flag = false;  // set when the estimate exceeds 1e-6 relative
};

// Area of F(disc) from the jet: pi * sum j |F_j|^2, with a reported
// truncation remainder estimate.
AreaEstimate probe_area(const TruncatedSeries& F);

}  // namespace bergsense
