#include "bergsense/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "bergsense/detail/fft.hpp"
#include "bergsense/detail/linalg.hpp"
#include "bergsense/detail/quadrature.hpp"
#include "bergsense/elliptic.hpp"
#include "bergsense/errors.hpp"

namespace bergsense {

namespace {

constexpr cplx kI(0.0, 1.0);

cplx moebius_to_upper(cplx w) { return (w + kI) / (1.0 + kI * w); }
cplx moebius_to_upper_deriv(cplx w) {
  const cplx d = 1.0 + kI * w;
  return 2.0 / (d * d);
}

// Second-derivative coefficient bound of a polynomial on |tau| <= radius.
double second_deriv_bound(const TruncatedSeries& p, double radius) {
  double acc = 0.0;
  for (int j = 2; j <= p.order(); ++j)
    acc += static_cast<double>(j) * (j - 1) * std::abs(p.coeffs[static_cast<size_t>(j)]) * std::pow(radius, j - 2);
  return acc;
}

double rect_corner_radius(const Rect& r) { return std::hypot(1.0 + r.mu, r.sigma); }

}  // namespace

RectMap::RectMap(double mu, double sigma) : rect_{mu, sigma} {
  if (!(mu > 0.0) || !(sigma > 0.0)) fail(errc::parameter_error, "rectangle needs mu > 0 and sigma > 0");
  k_ = modulus_from_aspect(rect_.aspect());
  K_ = elliptic_K(k_);
  Kp_ = elliptic_Kprime(k_);
  s_ = rect_.width() / (2.0 * K_);
}

cplx RectMap::value(cplx w) const {
  const cplx zeta = moebius_to_upper(w) / std::sqrt(k_);
  const cplx u = inverse_sn(zeta, k_);
  return s_ * u + cplx(0.5, -rect_.sigma);
}

cplx RectMap::deriv(cplx w) const {
  const cplx zeta = moebius_to_upper(w) / std::sqrt(k_);
  return s_ * inverse_sn_deriv(zeta, k_) * moebius_to_upper_deriv(w) / std::sqrt(k_);
}

double RectMap::real_preimage(double t) const {
  if (!(t > -rect_.mu) || !(t < 1.0 + rect_.mu))
    fail(errc::parameter_error, "point not on the rectangle's real segment");
  double lo = -1.0 + 1e-12, hi = 1.0 - 1e-12;
  // value() is real and increasing on the real diameter.
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (value(mid).real() < t)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

SpineFit fit_spine(const std::vector<cplx>& waypoints, size_t idx_a, size_t idx_b, int degree) {
  const size_t n = waypoints.size();
  if (n < 2) fail(errc::parameter_error, "need at least two waypoints");
  if (idx_a >= n || idx_b >= n || idx_a == idx_b) fail(errc::parameter_error, "bad waypoint indices");
  if (idx_a == 0 || idx_a == n - 1 || idx_b == 0 || idx_b == n - 1)
    fail(errc::infeasible_spine, "a and b must sit at interior parameter positions");
  if (degree < 1) fail(errc::infeasible_spine, "degree must be >= 1 to satisfy both interpolation constraints");

  // Chord-length parametrization onto [0, 1].
  std::vector<double> t(n, 0.0);
  for (size_t i = 1; i < n; ++i) t[i] = t[i - 1] + std::abs(waypoints[i] - waypoints[i - 1]);
  const double total = t.back();
  if (!(total > 0.0)) fail(errc::curve_error, "waypoints have zero total chord length");
  for (double& v : t) v /= total;
  if (t[idx_a] == t[idx_b]) fail(errc::fit_error, "a and b collapse to the same parameter");

  // Constrained least squares via the KKT system
  //   [A^T A  C^T] [p     ]   [A^T w]
  //   [C      0  ] [lambda] = [a; b ]
  const int cols = degree + 1;
  const int dim = cols + 2;
  detail::Mat m(dim, dim);
  std::vector<cplx> rhs(static_cast<size_t>(dim), cplx(0.0));
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> row(static_cast<size_t>(cols));
    double pw = 1.0;
    for (int j = 0; j < cols; ++j) {
      row[static_cast<size_t>(j)] = pw;
      pw *= t[i];
    }
    for (int r = 0; r < cols; ++r) {
      for (int c = 0; c < cols; ++c) m(r, c) += row[static_cast<size_t>(r)] * row[static_cast<size_t>(c)];
      rhs[static_cast<size_t>(r)] += row[static_cast<size_t>(r)] * waypoints[i];
    }
  }
  const double ta = t[idx_a], tb = t[idx_b];
  double pa = 1.0, pb = 1.0;
  for (int j = 0; j < cols; ++j) {
    m(cols, j) = pa;
    m(j, cols) = pa;
    m(cols + 1, j) = pb;
    m(j, cols + 1) = pb;
    pa *= ta;
    pb *= tb;
  }
  rhs[static_cast<size_t>(cols)] = waypoints[idx_a];
  rhs[static_cast<size_t>(cols) + 1] = waypoints[idx_b];

  std::vector<cplx> sol;
  try {
    sol = detail::solve_refined(m, rhs);
  } catch (const Error& e) {
    if (e.code() == errc::singular_solve) fail(errc::fit_error, "rank-deficient spine fit");
    throw;
  }
  std::vector<cplx> coeffs(sol.begin(), sol.begin() + cols);
  SpineFit fit{TruncatedSeries(0.0, std::move(coeffs)), ta, tb};

  const double scale = 1.0 + std::abs(waypoints[idx_a]) + std::abs(waypoints[idx_b]);
  if (std::abs(fit.poly.eval(ta) - waypoints[idx_a]) > 1e-12 * scale ||
      std::abs(fit.poly.eval(tb) - waypoints[idx_b]) > 1e-12 * scale)
    fail(errc::fit_error, "interpolation constraints not met to tolerance");
  return fit;
}

cplx ProbeDomain::map(cplx w) const {
  const RectMap rm(rect.mu, rect.sigma);
  const double al = center_shift;
  const cplx w0 = (w + al) / (1.0 + al * w);
  return spine.eval(rm.value(w0));
}

cplx ProbeDomain::map_deriv(cplx w) const {
  const RectMap rm(rect.mu, rect.sigma);
  const double al = center_shift;
  const cplx denom = 1.0 + al * w;
  const cplx w0 = (w + al) / denom;
  const cplx m0d = (1.0 - al * al) / (denom * denom);
  const cplx tau = rm.value(w0);
  return series_eval_derive(spine, tau, 1) * rm.deriv(w0) * m0d;
}

ConformalMap ProbeDomain::as_conformal() const {
  // Capture one RectMap for the lifetime of the callable; cheaper than the
  // per-call construction in map().
  auto rm = std::make_shared<RectMap>(rect.mu, rect.sigma);
  const TruncatedSeries p = spine;
  const double al = center_shift;
  return ConformalMap{
      [rm, p, al](cplx w) {
        const cplx w0 = (w + al) / (1.0 + al * w);
        return p.eval(rm->value(w0));
      },
      [rm, p, al](cplx w) {
        const cplx denom = 1.0 + al * w;
        const cplx w0 = (w + al) / denom;
        const cplx m0d = (1.0 - al * al) / (denom * denom);
        return series_eval_derive(p, rm->value(w0), 1) * rm->deriv(w0) * m0d;
      },
  };
}

TruncatedSeries extract_jet(const std::function<cplx(cplx)>& map, cplx exact_value_at_0, int order,
                            double r0, double r1, double agree_tol) {
  if (order < 1) fail(errc::order_range, "jet order must be >= 1");
  const int q = detail::next_pow2(std::max(256, 8 * order));

  auto coeffs_at = [&](double radius) {
    std::vector<cplx> samples(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i) samples[static_cast<size_t>(i)] = map(radius * std::polar(1.0, 2.0 * kPi * i / q));
    detail::fft(samples);
    std::vector<cplx> c(static_cast<size_t>(order) + 1);
    double rp = 1.0;
    for (int j = 0; j <= order; ++j) {
      c[static_cast<size_t>(j)] = samples[static_cast<size_t>(j)] / (static_cast<double>(q) * rp);
      rp *= radius;
    }
    return c;
  };

  std::vector<cplx> main = coeffs_at(r0);
  const std::vector<cplx> check = coeffs_at(r1);
  for (int j = 0; j <= order; ++j) {
    if (std::abs(main[static_cast<size_t>(j)] - check[static_cast<size_t>(j)]) > agree_tol)
      fail(errc::jet_extraction, "two-radius Taylor coefficients disagree at index " + std::to_string(j));
  }
  main[0] = exact_value_at_0;
  return TruncatedSeries(0.0, std::move(main));
}

TruncatedSeries probe_jet(const ProbeDomain& probe, int order) {
  const ConformalMap phi = probe.as_conformal();
  return extract_jet(phi.value, probe.a, order);
}

namespace {

int winding_number(const std::vector<cplx>& loop, cplx q, bool* degenerate) {
  double total = 0.0;
  for (size_t i = 0; i < loop.size(); ++i) {
    const cplx u = loop[i] - q;
    const cplx v = loop[(i + 1) % loop.size()] - q;
    if (std::abs(u) < 1e-12 || std::abs(v) < 1e-12) {
      *degenerate = true;
      return 0;
    }
    total += std::arg(v / u);
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

std::vector<cplx> rect_boundary_loop(const Rect& r, int per_unit) {
  const double x0 = -r.mu, x1 = 1.0 + r.mu, y0 = -r.sigma, y1 = r.sigma;
  const int nx = std::max(16, static_cast<int>(per_unit * r.width()));
  const int ny = std::max(16, static_cast<int>(per_unit * r.height()));
  std::vector<cplx> loop;
  loop.reserve(static_cast<size_t>(2 * (nx + ny)));
  for (int i = 0; i < nx; ++i) loop.emplace_back(x0 + (x1 - x0) * i / nx, y0);
  for (int i = 0; i < ny; ++i) loop.emplace_back(x1, y0 + (y1 - y0) * i / ny);
  for (int i = 0; i < nx; ++i) loop.emplace_back(x1 - (x1 - x0) * i / nx, y1);
  for (int i = 0; i < ny; ++i) loop.emplace_back(x0, y1 - (y1 - y0) * i / ny);
  return loop;
}

}  // namespace

ProbeChecks check_probe(const TruncatedSeries& spine, const Rect& rect,
                        const std::function<cplx(cplx)>& disc_map,
                        const std::function<bool(cplx)>& omega_membership, int samples) {
  ProbeChecks out;

  // (i) containment of the probe image in Omega: a polar grid through the
  // full map plus the exact closure boundary P(rectangle boundary).
  if (omega_membership) {
    out.containment_checked = true;
    const int nr = std::max(8, static_cast<int>(std::sqrt(samples / 4.0)));
    const int na = std::max(16, samples / nr);
    for (int i = 0; i < nr && out.containment_failures < 16; ++i) {
      const double r = 0.997 * std::sqrt((i + 1.0) / nr);
      for (int j = 0; j < na; ++j) {
        const cplx w = r * std::polar(1.0, 2.0 * kPi * j / na);
        const cplx z = disc_map(w);
        if (!omega_membership(z)) {
          if (out.containment_failures == 0) out.first_outside = z;
          ++out.containment_failures;
        }
      }
    }
    for (const cplx& tau : rect_boundary_loop(rect, 1024)) {
      if (out.containment_failures >= 16) break;
      const cplx z = spine.eval(tau);
      if (!omega_membership(z)) {
        if (out.containment_failures == 0) out.first_outside = z;
        ++out.containment_failures;
      }
    }
    out.containment_pass = out.containment_failures == 0;
  }

  // (ii) injectivity of the spine on the parameter rectangle: the image of
  // its boundary must wind exactly once around interior image probes.
  {
    const std::vector<cplx> tau_loop = rect_boundary_loop(rect, 512);
    std::vector<cplx> image_loop(tau_loop.size());
    for (size_t i = 0; i < tau_loop.size(); ++i) image_loop[i] = spine.eval(tau_loop[i]);

    bool ok = true;
    int wmin = 1, wmax = 1;
    bool first = true;
    for (int gi = 0; gi < 8 && ok; ++gi) {
      for (int gj = 0; gj < 8; ++gj) {
        const double x = -rect.mu + rect.width() * (0.15 + 0.7 * gi / 7.0);
        const double y = -rect.sigma + rect.height() * (0.15 + 0.7 * gj / 7.0);
        bool degenerate = false;
        const int w = winding_number(image_loop, spine.eval(cplx(x, y)), &degenerate);
        if (first) {
          wmin = wmax = w;
          first = false;
        }
        wmin = std::min(wmin, w);
        wmax = std::max(wmax, w);
        if (degenerate || w != 1) {
          ok = false;
          break;
        }
      }
    }
    out.injectivity_pass = ok;
    out.winding_min = wmin;
    out.winding_max = wmax;
  }

  // (iii) nonvanishing spine derivative on the closed rectangle.
  {
    const double lip = second_deriv_bound(spine, rect_corner_radius(rect) * 1.01);
    const int nx = 96, ny = 24;
    double min_abs = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= nx; ++i) {
      for (int j = 0; j <= ny; ++j) {
        const cplx tau(-rect.mu + rect.width() * i / nx, -rect.sigma + rect.height() * j / ny);
        min_abs = std::min(min_abs, std::abs(series_eval_derive(spine, tau, 1)));
      }
    }
    const double cell = 0.5 * std::hypot(rect.width() / nx, rect.height() / ny);
    out.spine_deriv_margin = min_abs - lip * cell;
    out.spine_deriv_pass = out.spine_deriv_margin > 0.0;
  }

  return out;
}

double spine_area(const TruncatedSeries& spine, const Rect& rect) {
  const TruncatedSeries dp = series_differentiate(spine);
  const int n = std::max(2, spine.order() + 2);
  const detail::GaussLegendre gl = detail::gauss_legendre(n);
  const double hx = rect.width() / 2.0, cx = 0.5;
  const double hy = rect.sigma;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx tau(cx + hx * gl.nodes[static_cast<size_t>(i)], hy * gl.nodes[static_cast<size_t>(j)]);
      acc += gl.weights[static_cast<size_t>(i)] * gl.weights[static_cast<size_t>(j)] * std::norm(dp.eval(tau));
    }
  }
  return acc * hx * hy;
}

double path_length_bound(const TruncatedSeries& spine, const Rect& rect, double t_a) {
  (void)t_a;  // the full [0,1] arclength dominates either one-sided arc
  const double lip = second_deriv_bound(spine, rect_corner_radius(rect) * 1.01);

  // Overestimated spine arclength on [0, 1].
  const int n = 2048;
  double arc = 0.0;
  double prev = std::abs(series_eval_derive(spine, cplx(0.0), 1));
  for (int i = 1; i <= n; ++i) {
    const double cur = std::abs(series_eval_derive(spine, cplx(static_cast<double>(i) / n, 0.0), 1));
    arc += (std::max(prev, cur) + 0.5 * lip / n) / n;
    prev = cur;
  }

  // Padded max |P'| over the closed rectangle.
  const int nx = 96, ny = 24;
  double max_d = 0.0;
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      const cplx tau(-rect.mu + rect.width() * i / nx, -rect.sigma + rect.height() * j / ny);
      max_d = std::max(max_d, std::abs(series_eval_derive(spine, tau, 1)));
    }
  const double cell = 0.5 * std::hypot(rect.width() / nx, rect.height() / ny);
  max_d += lip * cell;

  return arc + max_d * rect.diameter();
}

double boundary_distance_estimate(const ProbeDomain& probe, const std::function<double(cplx)>& boundary_distance) {
  if (!boundary_distance) fail(errc::geometry_error, "boundary distance function required");
  // The probe closure is P(closed rectangle) and its topological boundary
  // sits inside P(rectangle boundary), which is sampleable exactly. With
  // boundary_distance 1-Lipschitz, a spacing pad from the |P'| bound makes
  // the minimum rigorous up to the grid.
  double deriv_bound = 0.0;
  {
    const double rbox = rect_corner_radius(probe.rect) * 1.01;
    double rp = 1.0;
    for (int j = 1; j <= probe.spine.order(); ++j) {
      deriv_bound += j * std::abs(probe.spine.coeffs[static_cast<size_t>(j)]) * rp;
      rp *= rbox;
    }
  }
  const std::vector<cplx> loop = rect_boundary_loop(probe.rect, 2048);
  double min_d = std::numeric_limits<double>::infinity();
  double max_spacing = 0.0;
  for (size_t i = 0; i < loop.size(); ++i) {
    min_d = std::min(min_d, boundary_distance(probe.spine.eval(loop[i])));
    max_spacing = std::max(max_spacing, std::abs(loop[(i + 1) % loop.size()] - loop[i]));
  }
  // Interior sweep as a belt for non-convex Omega, where the boundary
  // minimum principle for the distance function does not apply.
  for (int i = 0; i <= 24; ++i) {
    for (int j = 0; j <= 12; ++j) {
      const cplx tau(-probe.rect.mu + probe.rect.width() * i / 24.0,
                     -probe.rect.sigma + probe.rect.height() * j / 12.0);
      min_d = std::min(min_d, boundary_distance(probe.spine.eval(tau)));
    }
  }
  const double d = min_d - deriv_bound * max_spacing * 0.5;
  if (!(d > 0.0)) fail(errc::geometry_error, "probe reaches the boundary of Omega within sampling slack");
  return d;
}

double spine_clearance(const TruncatedSeries& spine, const OmegaSpec& omega) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 256; ++i) {
    const cplx z = spine.eval(cplx(static_cast<double>(i) / 256.0, 0.0));
    if (omega.boundary_distance) {
      best = std::min(best, omega.boundary_distance(z));
      continue;
    }
    // Ray-march exit distance, minimum over 32 directions, with the convex
    // sampling correction cos(pi/32).
    double dir_min = std::numeric_limits<double>::infinity();
    for (int d = 0; d < 32; ++d) {
      const cplx e = std::polar(1.0, 2.0 * kPi * d / 32.0);
      double lo = 0.0, hi = 1e-3;
      while (omega.contains(z + hi * e) && hi < 1e6) {
        lo = hi;
        hi *= 2.0;
      }
      if (hi >= 1e6) continue;  // unbounded in this direction
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (omega.contains(z + mid * e))
          lo = mid;
        else
          hi = mid;
      }
      dir_min = std::min(dir_min, 0.5 * (lo + hi));
    }
    best = std::min(best, dir_min * std::cos(kPi / 32.0));
  }
  return best;
}

ProbeDomain build_probe(const ProbeSpec& spec) {
  const SpineFit fit = fit_spine(spec.waypoints, spec.idx_a, spec.idx_b, spec.degree);

  // Spine derivative must be bounded away from zero on [0, 1].
  {
    const double lip = second_deriv_bound(fit.poly, 1.0);
    double min_abs = std::numeric_limits<double>::infinity();
    const int n = 2048;
    for (int i = 0; i <= n; ++i)
      min_abs = std::min(min_abs, std::abs(series_eval_derive(fit.poly, cplx(static_cast<double>(i) / n, 0.0), 1)));
    if (min_abs - lip * 0.5 / n <= 0.0) fail(errc::infeasible_spine, "spine derivative vanishes on [0, 1]");
  }

  double sigma;
  if (spec.sigma) {
    sigma = *spec.sigma;
  } else if (spec.omega) {
    sigma = std::min(0.2, 0.5 * spine_clearance(fit.poly, *spec.omega));
  } else {
    sigma = 0.2;
  }
  if (!(sigma > 0.0)) fail(errc::geometry_error, "initial sigma is not positive");

  std::function<bool(cplx)> membership;
  if (spec.omega) membership = spec.omega->contains;

  for (int attempt = 0; attempt <= 20; ++attempt, sigma *= 0.5) {
    Rect rect{spec.mu, sigma};
    ProbeChecks checks;
    double alpha = 0.0;
    try {
      const RectMap rm(rect.mu, rect.sigma);
      alpha = rm.real_preimage(fit.t_a);
      auto disc_map = [&rm, &fit](cplx w) { return fit.poly.eval(rm.value(w)); };
      checks = check_probe(fit.poly, rect, disc_map, membership, spec.check_samples);
    } catch (const Error& e) {
      if (e.code() == errc::parameter_error) continue;  // aspect bracket; shrink and retry
      throw;
    }
    if (!checks.pass()) continue;

    ProbeDomain probe;
    probe.spine = fit.poly;
    probe.t_a = fit.t_a;
    probe.t_b = fit.t_b;
    probe.rect = rect;
    probe.modulus_k = RectMap(rect.mu, rect.sigma).modulus();
    probe.center_shift = alpha;
    probe.a = fit.poly.eval(fit.t_a);
    probe.b = fit.poly.eval(fit.t_b);
    probe.checks = checks;
    probe.sigma_halvings = attempt;
    probe.jet = probe_jet(probe, spec.jet_order);
    if (probe.jet.coeffs[1] == cplx(0.0)) fail(errc::singular_map, "probe jet has vanishing derivative");
    probe.area = spine_area(fit.poly, rect);
    return probe;
  }
  fail(errc::geometry_error, "probe checks still failing after 20 sigma halvings");
}

}  // namespace bergsense
