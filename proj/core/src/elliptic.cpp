#include "bergsense/elliptic.hpp"

#include <cmath>

#include "bergsense/errors.hpp"

namespace bergsense {

double elliptic_K(double k) {
  if (!(k >= 0.0) || k >= 1.0) fail(errc::parameter_error, "modulus must satisfy 0 <= k < 1");
  double a = 1.0;
  double g = std::sqrt((1.0 - k) * (1.0 + k));  // k' computed stably
  for (int i = 0; i < 60; ++i) {
    const double an = 0.5 * (a + g);
    const double gn = std::sqrt(a * g);
    a = an;
    g = gn;
    if (std::abs(a - g) <= 1e-16 * a) break;
  }
  return kPi / (2.0 * a);
}

double elliptic_Kprime(double k) {
  if (!(k > 0.0) || k >= 1.0) fail(errc::parameter_error, "modulus must satisfy 0 < k < 1");
  return elliptic_K(std::sqrt((1.0 - k) * (1.0 + k)));
}

cplx carlson_rf(cplx x, cplx y, cplx z) {
  // Duplication: each round quarters the spread of the arguments. Converges
  // for complex arguments with |arg| < pi.
  cplx mu;
  cplx dx, dy, dz;
  for (int i = 0; i < 80; ++i) {
    mu = (x + y + z) / 3.0;
    dx = 1.0 - x / mu;
    dy = 1.0 - y / mu;
    dz = 1.0 - z / mu;
    const double spread = std::max({std::abs(dx), std::abs(dy), std::abs(dz)});
    if (spread < 2e-4) break;
    const cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    const cplx lam = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
  }
  const cplx e2 = dx * dy + dy * dz + dz * dx;
  const cplx e3 = dx * dy * dz;
  // Fifth-order tail of the symmetric series; error ~ spread^6 < 1e-20 here.
  const cplx series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
  return series / std::sqrt(mu);
}

cplx inverse_sn(cplx z, double k) {
  const cplx z2 = z * z;
  return z * carlson_rf(1.0 - z2, 1.0 - k * k * z2, 1.0);
}

cplx inverse_sn_deriv(cplx z, double k) {
  const cplx z2 = z * z;
  return 1.0 / (std::sqrt(1.0 - z2) * std::sqrt(1.0 - k * k * z2));
}

double modulus_from_aspect(double aspect) {
  if (!(aspect > 0.0) || !std::isfinite(aspect)) fail(errc::parameter_error, "aspect ratio must be positive");
  // 2K/K' is increasing in k. The bracket stays where k' = sqrt(1-k^2) is
  // still representable below 1; beyond it the modulus parametrization
  // degenerates in double precision (aspect ~ [0.19, 21]).
  double lo = 1e-7, hi = std::sqrt(1.0 - 1e-14);
  auto f = [](double k) { return 2.0 * elliptic_K(k) / elliptic_Kprime(k); };
  if (aspect <= f(lo) || aspect >= f(hi)) fail(errc::parameter_error, "aspect ratio outside the solvable bracket");
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < aspect)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-16) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace bergsense
