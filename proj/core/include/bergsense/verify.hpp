#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bergsense/disc.hpp"
#include "bergsense/harmonic.hpp"
#include "bergsense/types.hpp"

namespace bergsense {

// Uniform samples of a function on a circle; the measurement primitive for
// derivative extraction (no difference quotients anywhere).
struct CircleSampler {
  cplx center{0.0};
  double radius = 0.0;
  int nodes = 0;  // power of two, >= 64
  std::vector<cplx> values;

  static CircleSampler sample(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes);
};

// m-th derivative at `a` from circle samples: spectrally accurate trapezoid
// sum of h(a + rho e^{i theta}) e^{-im theta} rho^-m.
cplx cauchy_deriv(const CircleSampler& samples, int m);
cplx cauchy_deriv(const std::function<cplx(cplx)>& h, cplx a, double rho, int m, int nodes = 256);

// Partial derivatives (d^m_x u, d^{m-1}_x d_y u)(a) for m = 0..maxm of a real
// harmonic function from one FFT of its circle samples; entry 0 is (u(a), 0).
std::vector<std::pair<double, double>> fourier_partials(const CircleSampler& samples, int maxm);
std::vector<std::pair<double, double>> fourier_partials(const std::function<double(cplx)>& u, cplx a, double rho,
                                                        int maxm, int nodes = 512);

// ||K_b - sum conj(d_m) K_a^m||_{L2(disc)} by polar quadrature
// (Gauss-Legendre in radius x trapezoid in angle).
double lambda_l2_quadrature(const SensingIdentity& id, int n_radial = 200, int n_angular = 512);

// Same norm for an arbitrary coefficient vector c against the K_a^m family.
double lambda_l2_quadrature_coeffs(cplx a, cplx b, const std::vector<cplx>& kernel_coeffs, int n_radial = 200,
                                   int n_angular = 512);

/// Random bounded harmonic test function: Poisson extension of a random
/// degree-<=8 trigonometric polynomial on the container circle, rescaled to
/// boundary sup M. Evaluations are closed-form harmonic polynomials.
class HarmonicSampler {
 public:
  HarmonicSampler(cplx center, double radius, std::vector<cplx> alpha);

  double operator()(cplx z) const;      // u(z)
  cplx completion(cplx z) const;        // h(z) with u = Re h
  cplx completion_deriv(cplx z) const;  // h'(z); |grad u| = |h'|
  // Exact partials in the fourier_partials layout.
  std::vector<std::pair<double, double>> partials(cplx a, int maxm) const;

  cplx center() const { return center_; }
  double radius() const { return radius_; }
  int degree() const { return static_cast<int>(alpha_.size()) - 1; }

 private:
  cplx center_;
  double radius_;
  std::vector<cplx> alpha_;  // h(z) = sum alpha_k ((z - center)/radius)^k
};

HarmonicSampler random_bounded_harmonic(std::uint64_t seed, double M, cplx container_center,
                                        double container_radius);

// Complex polynomial about 0 used as the L2 test family on the disc.
struct Polynomial {
  std::vector<cplx> coeffs;

  cplx eval(cplx z) const;
  cplx derivative(cplx a, int m) const;
  std::vector<cplx> derivatives(cplx a, int maxm) const;
  double l2_norm_disc() const;  // sqrt(sum |a_n|^2 pi/(n+1))
  double sup_on_circle(cplx center, double radius, int samples = 1024) const;
};

Polynomial random_l2_normalized_poly(std::uint64_t seed, int maxdeg);

struct ResidualReport {
  std::string family;
  std::uint64_t seed = 0;
  int count = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double certificate = 0.0;  // worst-case certified bound over the family
  int violations = 0;
};

// L2 polynomial family against a disc identity (taylor or gram provenance);
// violation when residual > l2_bound * ||h|| * (1 + 1e-8).
ResidualReport report_polynomial_l2(const SensingIdentity& id, int count, int maxdeg, std::uint64_t seed);

// Bounded harmonic family against a certified real table.
ResidualReport report_harmonic(const RealSensingTable& table, cplx container_center, double container_radius,
                               double M, int count, std::uint64_t seed);

// Polynomial family around a circle contour against a sup-certified identity.
ResidualReport report_runge_polynomials(const SensingIdentity& id, cplx contour_center, double contour_radius,
                                        int count, int maxdeg, std::uint64_t seed);

}  // namespace bergsense
