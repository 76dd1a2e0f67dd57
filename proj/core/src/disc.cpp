#include "bergsense/disc.hpp"

#include <cmath>

#include "bergsense/detail/linalg.hpp"
#include "bergsense/errors.hpp"

namespace bergsense {

const char* provenance_name(Provenance p) noexcept {
  switch (p) {
    case Provenance::taylor: return "taylor";
    case Provenance::transported: return "transported";
    case Provenance::gram_optimal: return "gram-optimal";
    case Provenance::runge: return "runge";
  }
  return "unknown";
}

cplx SensingIdentity::estimate(std::span<const cplx> derivs) const {
  if (static_cast<int>(derivs.size()) < order() + 1)
    fail(errc::order_range, "need derivatives up to the identity's order");
  cplx acc = 0.0;
  for (int m = 0; m <= order(); ++m) acc += weights[static_cast<size_t>(m)] * derivs[static_cast<size_t>(m)];
  return acc;
}

cplx disc_kernel_deriv(int m, cplx z) {
  if (m < 0) fail(errc::order_range, "kernel derivative order must be >= 0");
  return factorial(m + 1) / kPi * ipow(z, m);
}

cplx disc_kernel_deriv_at(cplx a, int m, cplx z) {
  if (m < 0) fail(errc::order_range, "kernel derivative order must be >= 0");
  const cplx s = 1.0 - z * std::conj(a);
  return factorial(m + 1) / kPi * ipow(z, m) * ipow(s, -(m + 2));
}

std::vector<cplx> taylor_weights(cplx b, int N) {
  const double r = std::abs(b);
  if (r >= 1.0) fail(errc::out_of_disc, "taylor_weights needs |b| < 1");
  if (r == 0.0) fail(errc::degenerate_points, "taylor_weights needs b != 0");
  if (N < 0) fail(errc::order_range, "order must be nonnegative");
  std::vector<cplx> d(static_cast<size_t>(N) + 1);
  cplx pow = 1.0;   // b^m
  double fact = 1.0;  // m!
  for (int m = 0; m <= N; ++m) {
    if (m > 0) {
      pow *= b;
      fact *= m;
    }
    d[static_cast<size_t>(m)] = pow / fact;
  }
  return d;
}

double error_tail_sup(cplx b, int N, double r) {
  if (N < 0) fail(errc::order_range, "order must be nonnegative");
  const double rho = r * std::abs(b);
  if (!(r > 0.0) || rho >= 1.0) fail(errc::invalid_radius, "need r > 0 with r|b| < 1");
  const double num = (N + 2) * std::pow(rho, N + 1) + (N + 1) * std::pow(rho, N + 2);
  return num / ((1.0 - rho) * (1.0 - rho) * kPi);
}

double error_tail_l2(cplx B, int N) {
  if (N < 0) fail(errc::order_range, "order must be nonnegative");
  const double x = std::norm(B);
  if (x >= 1.0) fail(errc::out_of_disc, "error_tail_l2 needs |B| < 1");
  const double num = (N + 2) * std::pow(x, N + 1) - (N + 1) * std::pow(x, N + 2);
  return std::sqrt(num / ((1.0 - x) * (1.0 - x) * kPi));
}

double default_sup_radius(cplx b) {
  const double ab = std::abs(b);
  if (ab <= 0.0 || ab >= 1.0) fail(errc::out_of_disc, "need 0 < |b| < 1");
  return 0.5 * (1.0 + 1.0 / ab);
}

int choose_order(cplx b, double eps, TailMode mode, double r) {
  if (!(eps > 0.0)) fail(errc::parameter_error, "eps must be positive");
  if (mode == TailMode::sup && r == 0.0) r = default_sup_radius(b);
  constexpr int kGuard = 10000;
  for (int N = 0; N <= kGuard; ++N) {
    const double tail = (mode == TailMode::sup) ? error_tail_sup(b, N, r) : error_tail_l2(b, N);
    if (tail <= eps) return N;
  }
  fail(errc::budget_exceeded, "no order up to 10000 meets the requested tolerance");
}

cplx disc_kernel_gram_entry(cplx a, int m, int n) {
  // G_mn = d^m/dz^m d^n/dconj(w)^n [pi^-1 (1 - z conj(w))^-2] at z = w = a.
  // Leibniz over z^n * (1 - z conj(w))^-(n+2) gives a finite sum.
  const double x = std::norm(a);
  const cplx ac = std::conj(a);
  const double inv = 1.0 / (1.0 - x);
  cplx acc = 0.0;
  const int imax = std::min(m, n);
  for (int i = 0; i <= imax; ++i) {
    // binom(m, i) * n!/(n-i)! * (n+m-i+1)! * a^(n-i) conj(a)^(m-i) * (1-|a|^2)^-(n+m-i+2)
    const double binom = factorial(m) / (factorial(i) * factorial(m - i));
    const double term = binom * falling_ratio(n, n - i) * factorial(n + m - i + 1);
    acc += term * ipow(a, n - i) * ipow(ac, m - i) * std::pow(inv, n + m - i + 2);
  }
  return acc / kPi;
}

SensingIdentity optimal_weights_gram(cplx a, cplx b, int N) {
  if (std::abs(a) >= 1.0 || std::abs(b) >= 1.0) fail(errc::out_of_disc, "need |a|, |b| < 1");
  if (a == b) fail(errc::degenerate_points, "need a != b");
  if (N < 0) fail(errc::order_range, "order must be nonnegative");
  if (N > 40) fail(errc::order_range, "Gram solve capped at N = 40 in double precision");

  const int n = N + 1;
  detail::Mat g(n, n);
  for (int m = 0; m <= N; ++m)
    for (int k = 0; k <= N; ++k) g(m, k) = disc_kernel_gram_entry(a, m, k);

  // rho_m = <K_b, K_a^m> = conj(K_a^m(b)).
  std::vector<cplx> rho(static_cast<size_t>(n));
  for (int m = 0; m <= N; ++m) rho[static_cast<size_t>(m)] = std::conj(disc_kernel_deriv_at(a, m, b));

  double cond = 0.0;
  std::vector<cplx> c = detail::solve_refined(g, rho, &cond);

  // ||lambda||^2 = K(b, b) - rho^* c at the projection optimum.
  const double kbb = 1.0 / (kPi * std::pow(1.0 - std::norm(b), 2));
  long double dot = 0.0;
  for (int m = 0; m <= N; ++m) {
    const cplx t = std::conj(rho[static_cast<size_t>(m)]) * c[static_cast<size_t>(m)];
    dot += t.real();
  }
  const double resid2 = std::max(0.0, kbb - static_cast<double>(dot));

  SensingIdentity id;
  id.domain = DomainRef{DomainRef::Kind::disc, ""};
  id.a = a;
  id.b = b;
  id.weights.resize(static_cast<size_t>(n));
  for (int m = 0; m <= N; ++m) id.weights[static_cast<size_t>(m)] = std::conj(c[static_cast<size_t>(m)]);
  id.l2_bound = std::sqrt(resid2);
  id.provenance = Provenance::gram_optimal;
  if (cond > 1e12) id.warnings.push_back("ill-conditioned Gram system, condition estimate " + std::to_string(cond));
  return id;
}

SensingIdentity disc_identity_at_order(cplx b, int N) {
  SensingIdentity id;
  id.domain = DomainRef{DomainRef::Kind::disc, ""};
  id.a = 0.0;
  id.b = b;
  id.weights = taylor_weights(b, N);
  id.l2_bound = error_tail_l2(b, N);
  id.provenance = Provenance::taylor;
  return id;
}

SensingIdentity disc_identity(cplx b, double eps, TailMode mode, double r) {
  return disc_identity_at_order(b, choose_order(b, eps, mode, r));
}

}  // namespace bergsense
