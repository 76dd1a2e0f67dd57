#include "bergsense/detail/quadrature.hpp"

#include <cmath>

#include "bergsense/errors.hpp"
#include "bergsense/types.hpp"

namespace bergsense::detail {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) fail(errc::parameter_error, "quadrature order must be >= 1");
  GaussLegendre gl;
  gl.nodes.resize(static_cast<size_t>(n));
  gl.weights.resize(static_cast<size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[static_cast<size_t>(i)] = -x;
    gl.nodes[static_cast<size_t>(n - 1 - i)] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    gl.weights[static_cast<size_t>(i)] = w;
    gl.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) gl.nodes[static_cast<size_t>(n / 2)] = 0.0;
  return gl;
}

}  // namespace bergsense::detail
