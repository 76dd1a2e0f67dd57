#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bergsense/types.hpp"

namespace bergsense {

enum class Provenance { taylor, transported, gram_optimal, runge };

const char* provenance_name(Provenance p) noexcept;

struct DomainRef {
  enum class Kind { disc, probe, contour } kind = Kind::disc;
  std::string id;  // label for probe domains, empty for the unit disc
};

// Sup-norm certificate attached to contour-quadrature identities:
// |h(b) - sum d_m h^(m)(a)| <= eps * boundary_length * sup_{boundary}|h| / (2 pi).
struct SupCertificate {
  double eps = 0.0;
  double boundary_length = 0.0;
  double bound_per_sup() const { return eps * boundary_length / (2.0 * kPi); }
};

/// Derivative-weight identity h(b) ~= sum_{m<=N} d_m h^(m)(a).
///
/// Convention lock: d_m is the conjugate of the kernel-combination
/// coefficient c_m, so consumers multiply weights straight against
/// derivatives and never conjugate. l2_bound certifies the residual per unit
/// L2 norm of h on the domain; contour identities carry a sup-norm
/// certificate instead.
struct SensingIdentity {
  DomainRef domain;
  cplx a{0.0};
  cplx b{0.0};
  std::vector<cplx> weights;  // d_0..d_N
  std::optional<double> l2_bound;
  std::optional<SupCertificate> sup_cert;
  Provenance provenance = Provenance::taylor;
  std::vector<std::string> warnings;

  int order() const { return static_cast<int>(weights.size()) - 1; }

  // sum d_m derivs[m]; derivs[m] = h^(m)(a), length must be >= order()+1.
  cplx estimate(std::span<const cplx> derivs) const;
};

enum class TailMode { sup, l2 };

// m-th anti-holomorphic kernel derivative of the unit disc at the origin:
// K_0^m(z) = pi^-1 (m+1)! z^m.
cplx disc_kernel_deriv(int m, cplx z);

// General kernel derivative K_a^m(z) = pi^-1 (m+1)! z^m (1 - z conj(a))^-(m+2).
cplx disc_kernel_deriv_at(cplx a, int m, cplx z);

// Taylor sensing weights d_m = b^m / m! for the origin-based disc identity.
std::vector<cplx> taylor_weights(cplx b, int N);

// Upper bound for sup_{|z|<=r} |E_N(z conj(b))|, valid for rho = r|b| < 1.
double error_tail_sup(cplx b, int N, double r);

// Exact L2(disc) norm of the truncation tail E_N(z conj(B)).
double error_tail_l2(cplx B, int N);

// Default sup-mode evaluation radius when none is supplied.
double default_sup_radius(cplx b);

// Minimal N whose tail bound is <= eps; linear scan guarded at N <= 10000.
int choose_order(cplx b, double eps, TailMode mode, double r = 0.0);

// L2-optimal weights at (a, b) from the kernel Gram system; provenance
// gram-optimal. Attaches an ill-conditioning warning when the Gram condition
// estimate exceeds 1e12.
SensingIdentity optimal_weights_gram(cplx a, cplx b, int N);

// Origin-based Taylor identity with N from choose_order and the exact L2 tail
// as certificate.
SensingIdentity disc_identity(cplx b, double eps, TailMode mode, double r = 0.0);

// Same assembly at a caller-fixed order.
SensingIdentity disc_identity_at_order(cplx b, int N);

// Gram matrix entry <K_a^n, K_a^m> of the unit disc in closed form.
cplx disc_kernel_gram_entry(cplx a, int m, int n);

}  // namespace bergsense
