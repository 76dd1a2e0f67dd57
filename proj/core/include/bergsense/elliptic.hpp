#pragma once

#include "bergsense/types.hpp"

namespace bergsense {

// Complete elliptic integral of the first kind, K(k) = pi / (2 agm(1, k')),
// modulus convention (not parameter m = k^2). Valid for 0 <= k < 1.
double elliptic_K(double k);

// Complementary integral K'(k) = K(sqrt(1 - k^2)).
double elliptic_Kprime(double k);

// Carlson symmetric integral R_F(x, y, z) for complex arguments off the
// negative real axis; duplication (symmetric Landen) descent to ~1e-14.
cplx carlson_rf(cplx x, cplx y, cplx z);

// Inverse Jacobi sn: arcsn(z, k) = z R_F(1 - z^2, 1 - k^2 z^2, 1). For z in
// the open upper half plane this is the Schwarz-Christoffel map onto the
// rectangle (-K, K) x (0, K').
cplx inverse_sn(cplx z, double k);

// Derivative branch of the rectangle map: 1/(sqrt(1-z^2) sqrt(1-k^2 z^2)),
// principal square roots factor by factor (analytic on the upper half plane).
cplx inverse_sn_deriv(cplx z, double k);

// Solves 2 K(k)/K'(k) = aspect for k in (0, 1) by bisection.
double modulus_from_aspect(double aspect);

}  // namespace bergsense
