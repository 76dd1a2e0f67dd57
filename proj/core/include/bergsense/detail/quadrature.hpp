#pragma once

#include <utility>
#include <vector>

namespace bergsense::detail {

// Gauss-Legendre nodes and weights on [-1, 1], Newton iteration on the
// Legendre recurrence. Exact for polynomials of degree <= 2n-1.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

}  // namespace bergsense::detail
