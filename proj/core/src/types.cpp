#include "bergsense/types.hpp"

#include "bergsense/errors.hpp"

namespace bergsense {

double factorial(int n) {
  if (n < 0 || n > 170) fail(errc::order_range, "factorial argument must be in [0, 170]");
  double p = 1.0;
  for (int i = 2; i <= n; ++i) p *= i;
  return p;
}

double falling_ratio(int n, int k) {
  if (k < 0 || n < k) fail(errc::order_range, "falling_ratio requires 0 <= k <= n");
  double p = 1.0;
  for (int i = k + 1; i <= n; ++i) p *= i;
  return p;
}

cplx ipow(cplx z, int k) {
  if (k < 0) return 1.0 / ipow(z, -k);
  cplx acc = 1.0;
  cplx base = z;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

}  // namespace bergsense
