#include "bergsense/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bergsense/detail/fft.hpp"
#include "bergsense/detail/parallel.hpp"
#include "bergsense/detail/quadrature.hpp"
#include "bergsense/errors.hpp"

namespace bergsense {

CircleSampler CircleSampler::sample(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes) {
  if (nodes < 64 || (nodes & (nodes - 1)) != 0) fail(errc::resolution_error, "nodes must be a power of two >= 64");
  if (!(radius > 0.0)) fail(errc::invalid_radius, "radius must be positive");
  CircleSampler s;
  s.center = center;
  s.radius = radius;
  s.nodes = nodes;
  s.values.resize(static_cast<size_t>(nodes));
  for (int q = 0; q < nodes; ++q)
    s.values[static_cast<size_t>(q)] = f(center + radius * std::polar(1.0, 2.0 * kPi * q / nodes));
  return s;
}

cplx cauchy_deriv(const CircleSampler& s, int m) {
  if (m < 0) fail(errc::order_range, "derivative order must be >= 0");
  if (s.nodes < 4 * std::max(1, m)) fail(errc::resolution_error, "need at least 4m nodes");
  cplx acc = 0.0;
  for (int q = 0; q < s.nodes; ++q) {
    const double theta = 2.0 * kPi * q / s.nodes;
    acc += s.values[static_cast<size_t>(q)] * std::polar(1.0, -m * theta);
  }
  return acc * factorial(m) / (static_cast<double>(s.nodes) * std::pow(s.radius, m));
}

cplx cauchy_deriv(const std::function<cplx(cplx)>& h, cplx a, double rho, int m, int nodes) {
  return cauchy_deriv(CircleSampler::sample(h, a, rho, nodes), m);
}

std::vector<std::pair<double, double>> fourier_partials(const CircleSampler& s, int maxm) {
  if (maxm < 0) fail(errc::order_range, "maxm must be >= 0");
  if (s.nodes < 4 * std::max(1, maxm)) fail(errc::resolution_error, "need at least 4*maxm nodes");
  std::vector<cplx> hat = s.values;
  detail::fft(hat);
  // alpha_k = 2 c_k / rho^k (k >= 1), alpha_0 = c_0, where c_k = hat_k/nodes.
  std::vector<std::pair<double, double>> out(static_cast<size_t>(maxm) + 1);
  out[0] = {hat[0].real() / s.nodes, 0.0};
  double rp = 1.0;
  double fact = 1.0;
  for (int m = 1; m <= maxm; ++m) {
    rp *= s.radius;
    fact *= m;
    const cplx alpha = 2.0 * hat[static_cast<size_t>(m)] / (static_cast<double>(s.nodes) * rp);
    const cplx hm = fact * alpha;  // h^(m)(a)
    out[static_cast<size_t>(m)] = {hm.real(), -hm.imag()};
  }
  return out;
}

std::vector<std::pair<double, double>> fourier_partials(const std::function<double(cplx)>& u, cplx a, double rho,
                                                        int maxm, int nodes) {
  auto wrapped = [&u](cplx z) { return cplx(u(z), 0.0); };
  return fourier_partials(CircleSampler::sample(wrapped, a, rho, nodes), maxm);
}

double lambda_l2_quadrature_coeffs(cplx a, cplx b, const std::vector<cplx>& kernel_coeffs, int n_radial,
                                   int n_angular) {
  const detail::GaussLegendre gl = detail::gauss_legendre(n_radial);
  const int N = static_cast<int>(kernel_coeffs.size()) - 1;

  std::vector<double> ring(static_cast<size_t>(n_radial), 0.0);
  detail::parallel_for(n_radial, [&](int i) {
    const double r = 0.5 * (gl.nodes[static_cast<size_t>(i)] + 1.0);  // [0, 1]
    double acc = 0.0;
    for (int q = 0; q < n_angular; ++q) {
      const cplx z = r * std::polar(1.0, 2.0 * kPi * q / n_angular);
      cplx lam = disc_kernel_deriv_at(b, 0, z);  // K_b(z)
      for (int m = 0; m <= N; ++m) lam -= kernel_coeffs[static_cast<size_t>(m)] * disc_kernel_deriv_at(a, m, z);
      acc += std::norm(lam);
    }
    ring[static_cast<size_t>(i)] = acc * r * gl.weights[static_cast<size_t>(i)];
  });
  double total = 0.0;
  for (double v : ring) total += v;
  // dA = r dr dtheta; radial substitution r = (x+1)/2 contributes 1/2.
  total *= 0.5 * (2.0 * kPi / n_angular);
  return std::sqrt(total);
}

double lambda_l2_quadrature(const SensingIdentity& id, int n_radial, int n_angular) {
  if (id.provenance != Provenance::taylor && id.provenance != Provenance::gram_optimal)
    fail(errc::parameter_error, "quadrature needs explicit disc kernels (taylor or gram provenance)");
  std::vector<cplx> c(id.weights.size());
  for (size_t m = 0; m < id.weights.size(); ++m) c[m] = std::conj(id.weights[m]);
  return lambda_l2_quadrature_coeffs(id.a, id.b, c, n_radial, n_angular);
}

HarmonicSampler::HarmonicSampler(cplx center, double radius, std::vector<cplx> alpha)
    : center_(center), radius_(radius), alpha_(std::move(alpha)) {
  if (!(radius_ > 0.0)) fail(errc::invalid_radius, "container radius must be positive");
  if (alpha_.empty()) fail(errc::parameter_error, "sampler needs at least one coefficient");
}

cplx HarmonicSampler::completion(cplx z) const {
  const cplx w = (z - center_) / radius_;
  cplx acc = 0.0;
  for (size_t k = alpha_.size(); k-- > 0;) acc = acc * w + alpha_[k];
  return acc;
}

double HarmonicSampler::operator()(cplx z) const { return completion(z).real(); }

cplx HarmonicSampler::completion_deriv(cplx z) const {
  const cplx w = (z - center_) / radius_;
  cplx acc = 0.0;
  for (size_t k = alpha_.size(); k-- > 1;) acc = acc * w + static_cast<double>(k) * alpha_[k];
  return acc / radius_;
}

std::vector<std::pair<double, double>> HarmonicSampler::partials(cplx a, int maxm) const {
  std::vector<std::pair<double, double>> out(static_cast<size_t>(maxm) + 1);
  const cplx w = (a - center_) / radius_;
  const int deg = degree();
  out[0] = {completion(a).real(), 0.0};
  for (int m = 1; m <= maxm; ++m) {
    cplx hm = 0.0;
    if (m <= deg) {
      // h^(m)(a) = sum_{k>=m} alpha_k k!/(k-m)! w^{k-m} / radius^m
      for (int k = deg; k >= m; --k) hm = hm * w + alpha_[static_cast<size_t>(k)] * falling_ratio(k, k - m);
      hm /= std::pow(radius_, m);
    }
    out[static_cast<size_t>(m)] = {hm.real(), -hm.imag()};
  }
  return out;
}

HarmonicSampler random_bounded_harmonic(std::uint64_t seed, double M, cplx container_center,
                                        double container_radius) {
  if (!(M > 0.0)) fail(errc::parameter_error, "M must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  constexpr int kDegree = 8;
  std::vector<cplx> alpha(static_cast<size_t>(kDegree) + 1);
  alpha[0] = cplx(unif(rng), 0.0);
  for (int k = 1; k <= kDegree; ++k) alpha[static_cast<size_t>(k)] = cplx(unif(rng), unif(rng));

  // Rescale so the boundary sup over 4096 samples equals M; by the maximum
  // principle the interior stays below it.
  double sup = 0.0;
  for (int q = 0; q < 4096; ++q) {
    const cplx w = std::polar(1.0, 2.0 * kPi * q / 4096.0);
    cplx acc = 0.0;
    for (size_t k = alpha.size(); k-- > 0;) acc = acc * w + alpha[k];
    sup = std::max(sup, std::abs(acc.real()));
  }
  if (sup == 0.0) {
    alpha[0] = M;
  } else {
    for (cplx& c : alpha) c *= M / sup;
  }
  return HarmonicSampler(container_center, container_radius, std::move(alpha));
}

cplx Polynomial::eval(cplx z) const {
  cplx acc = 0.0;
  for (size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
  return acc;
}

cplx Polynomial::derivative(cplx a, int m) const {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  if (m > deg) return 0.0;
  cplx acc = 0.0;
  for (int k = deg; k >= m; --k) acc = acc * a + coeffs[static_cast<size_t>(k)] * falling_ratio(k, k - m);
  return acc;
}

std::vector<cplx> Polynomial::derivatives(cplx a, int maxm) const {
  std::vector<cplx> out(static_cast<size_t>(maxm) + 1);
  for (int m = 0; m <= maxm; ++m) out[static_cast<size_t>(m)] = derivative(a, m);
  return out;
}

double Polynomial::l2_norm_disc() const {
  double acc = 0.0;
  for (size_t n = 0; n < coeffs.size(); ++n) acc += std::norm(coeffs[n]) * kPi / (static_cast<double>(n) + 1.0);
  return std::sqrt(acc);
}

double Polynomial::sup_on_circle(cplx center, double radius, int samples) const {
  double sup = 0.0;
  for (int q = 0; q < samples; ++q)
    sup = std::max(sup, std::abs(eval(center + radius * std::polar(1.0, 2.0 * kPi * q / samples))));
  return sup;
}

Polynomial random_l2_normalized_poly(std::uint64_t seed, int maxdeg) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Polynomial p;
  p.coeffs.resize(static_cast<size_t>(maxdeg) + 1);
  for (cplx& c : p.coeffs) c = cplx(unif(rng), unif(rng));
  const double norm = p.l2_norm_disc();
  for (cplx& c : p.coeffs) c /= norm;
  return p;
}

ResidualReport report_polynomial_l2(const SensingIdentity& id, int count, int maxdeg, std::uint64_t seed) {
  if (!id.l2_bound) fail(errc::parameter_error, "identity carries no L2 certificate");
  ResidualReport rep;
  rep.family = "poly-l2";
  rep.seed = seed;
  rep.count = count;
  rep.certificate = *id.l2_bound;  // per unit L2 norm; family is normalized

  std::vector<double> residuals(static_cast<size_t>(count), 0.0);
  const int N = id.order();
  detail::parallel_for(count, [&](int i) {
    const Polynomial h = random_l2_normalized_poly(seed + static_cast<std::uint64_t>(i), maxdeg);
    const std::vector<cplx> derivs = h.derivatives(id.a, N);
    const cplx est = id.estimate(derivs);
    residuals[static_cast<size_t>(i)] = std::abs(h.eval(id.b) - est);
  });

  double sum = 0.0;
  for (int i = 0; i < count; ++i) {
    const double r = residuals[static_cast<size_t>(i)];
    rep.max_residual = std::max(rep.max_residual, r);
    sum += r;
    if (r > *id.l2_bound * (1.0 + 1e-8)) ++rep.violations;
  }
  rep.mean_residual = count > 0 ? sum / count : 0.0;
  return rep;
}

ResidualReport report_harmonic(const RealSensingTable& table, cplx container_center, double container_radius,
                               double M, int count, std::uint64_t seed) {
  if (!table.certificate) fail(errc::parameter_error, "table certificate is unfilled");
  ResidualReport rep;
  rep.family = "harmonic";
  rep.seed = seed;
  rep.count = count;
  rep.certificate = table.certificate->bound_for(M);

  const int maxm = table.max_order();
  std::vector<double> residuals(static_cast<size_t>(count), 0.0);
  detail::parallel_for(count, [&](int i) {
    const HarmonicSampler u = random_bounded_harmonic(seed + static_cast<std::uint64_t>(i), M, container_center,
                                                      container_radius);
    const double truth = u(table.b);
    const double est = table.evaluate(u.partials(table.a, maxm));
    residuals[static_cast<size_t>(i)] = std::abs(truth - est);
  });

  double sum = 0.0;
  for (int i = 0; i < count; ++i) {
    const double r = residuals[static_cast<size_t>(i)];
    rep.max_residual = std::max(rep.max_residual, r);
    sum += r;
    if (r > rep.certificate) ++rep.violations;
  }
  rep.mean_residual = count > 0 ? sum / count : 0.0;
  return rep;
}

ResidualReport report_runge_polynomials(const SensingIdentity& id, cplx contour_center, double contour_radius,
                                        int count, int maxdeg, std::uint64_t seed) {
  if (!id.sup_cert) fail(errc::parameter_error, "identity carries no sup-norm certificate");
  ResidualReport rep;
  rep.family = "poly-sup";
  rep.seed = seed;
  rep.count = count;

  const double per_sup = id.sup_cert->bound_per_sup();
  const int N = id.order();
  std::vector<double> residuals(static_cast<size_t>(count), 0.0);
  std::vector<double> bounds(static_cast<size_t>(count), 0.0);
  detail::parallel_for(count, [&](int i) {
    const Polynomial h = random_l2_normalized_poly(seed + static_cast<std::uint64_t>(i), maxdeg);
    const cplx est = id.estimate(h.derivatives(id.a, N));
    residuals[static_cast<size_t>(i)] = std::abs(h.eval(id.b) - est);
    bounds[static_cast<size_t>(i)] = per_sup * h.sup_on_circle(contour_center, contour_radius);
  });

  double sum = 0.0;
  for (int i = 0; i < count; ++i) {
    const double r = residuals[static_cast<size_t>(i)];
    rep.max_residual = std::max(rep.max_residual, r);
    rep.certificate = std::max(rep.certificate, bounds[static_cast<size_t>(i)]);
    sum += r;
    if (r > bounds[static_cast<size_t>(i)] * (1.0 + 1e-9)) ++rep.violations;
  }
  rep.mean_residual = count > 0 ? sum / count : 0.0;
  return rep;
}

}  // namespace bergsense
