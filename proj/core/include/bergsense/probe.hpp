#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bergsense/series.hpp"
#include "bergsense/transport.hpp"
#include "bergsense/types.hpp"

namespace bergsense {

// Parameter rectangle R = (-mu, 1+mu) x (-sigma, sigma) around [0, 1].
struct Rect {
  double mu = 0.1;
  double sigma = 0.2;
  double width() const { return 1.0 + 2.0 * mu; }
  double height() const { return 2.0 * sigma; }
  double aspect() const { return width() / height(); }
  double diameter() const { return std::hypot(width(), height()); }
};

// Conformal map from the unit disc onto R: Moebius onto the upper half
// plane, Schwarz-Christoffel elliptic integral onto (-K, K) x (0, K'), then
// the affine normalization. Commutes with conjugation; 0 maps to the
// rectangle center (1/2, 0) and the real diameter onto (-mu, 1+mu).
class RectMap {
 public:
  RectMap(double mu, double sigma);

  cplx value(cplx w) const;
  cplx deriv(cplx w) const;

  // Disc preimage of a point t on the real segment (-mu, 1+mu).
  double real_preimage(double t) const;

  double modulus() const { return k_; }
  double complete_K() const { return K_; }
  double complete_Kprime() const { return Kp_; }
  double scale() const { return s_; }
  const Rect& rect() const { return rect_; }

 private:
  Rect rect_;
  double k_, K_, Kp_, s_;
};

// Least-squares polynomial spine through the waypoints, chord-length
// parametrized on [0, 1], constrained to interpolate a and b exactly.
struct SpineFit {
  TruncatedSeries poly;  // P(t) = sum p_j t^j, complex coefficients
  double t_a = 0.0;
  double t_b = 0.0;
};
SpineFit fit_spine(const std::vector<cplx>& waypoints, size_t idx_a, size_t idx_b, int degree);

// Membership (and optionally exact boundary distance) of the ambient domain.
struct OmegaSpec {
  std::function<bool(cplx)> contains;
  std::function<double(cplx)> boundary_distance;  // may be empty
};

struct ProbeChecks {
  bool containment_checked = false;
  bool containment_pass = true;
  int containment_failures = 0;
  cplx first_outside{0.0};

  bool injectivity_pass = false;
  int winding_min = 0;
  int winding_max = 0;

  bool spine_deriv_pass = false;
  double spine_deriv_margin = 0.0;  // min |P'| on the closed rectangle minus Lipschitz slack

  bool pass() const { return containment_pass && injectivity_pass && spine_deriv_pass; }
};

/// Probe domain of the composite map phi = P(rect_map(m0(w))): polynomial
/// spine through a and b, rectangle parameter region, and the disc jet used
/// for kernel transport.
struct ProbeDomain {
  TruncatedSeries spine;
  double t_a = 0.0, t_b = 0.0;
  Rect rect;
  double modulus_k = 0.0;
  double center_shift = 0.0;  // alpha with m0(0) = alpha = rect-map preimage of t_a
  TruncatedSeries jet;        // F, jet of phi at 0; F_0 = a exactly
  double area = 0.0;          // exact area of P(R)
  cplx a{0.0}, b{0.0};
  ProbeChecks checks;
  int sigma_halvings = 0;

  cplx map(cplx w) const;
  cplx map_deriv(cplx w) const;
  ConformalMap as_conformal() const;
};

struct ProbeSpec {
  std::vector<cplx> waypoints;
  size_t idx_a = 0;
  size_t idx_b = 0;
  int degree = 3;
  double mu = 0.1;
  std::optional<double> sigma;  // default policy: min(0.2, half spine clearance)
  int jet_order = 32;
  std::optional<OmegaSpec> omega;
  int check_samples = 4096;
};

// Builds the probe; sigma is halved (up to 20 times) until the checks pass.
ProbeDomain build_probe(const ProbeSpec& spec);

// Taylor jet of an analytic map at 0 by sampled Cauchy integrals on two
// circles; coefficientwise agreement <= tol is the accuracy gate.
TruncatedSeries extract_jet(const std::function<cplx(cplx)>& map, cplx exact_value_at_0, int order,
                            double r0 = 0.8, double r1 = 0.7, double agree_tol = 1e-9);

// Re-extracts the probe's composite-map jet at the requested order.
TruncatedSeries probe_jet(const ProbeDomain& probe, int order);

// Containment / injectivity / spine-derivative diagnostics.
ProbeChecks check_probe(const TruncatedSeries& spine, const Rect& rect,
                        const std::function<cplx(cplx)>& disc_map,
                        const std::function<bool(cplx)>& omega_membership, int samples);

// Exact area of P(R) by Gauss-Legendre quadrature of |P'|^2 over R
// (polynomial integrand, so the rule is exact).
double spine_area(const TruncatedSeries& spine, const Rect& rect);

// Conservative bound on the in-probe path length from a to any probe point:
// spine arclength over [0, 1] plus max_R |P'| times the rectangle diameter.
double path_length_bound(const TruncatedSeries& spine, const Rect& rect, double t_a);

// Distance from the probe closure to the boundary of Omega, from an exact
// boundary-distance function; grid minimum with a sampling-gap pad.
double boundary_distance_estimate(const ProbeDomain& probe, const std::function<double(cplx)>& boundary_distance);

// Heuristic clearance of the spine inside Omega used by the sigma policy.
double spine_clearance(const TruncatedSeries& spine, const OmegaSpec& omega);

}  // namespace bergsense
