#pragma once

namespace phi4::elliptic {

// Complete elliptic integrals in the modulus convention:
//   K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta)
//   E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 theta) dtheta
// Evaluated by the arithmetic-geometric mean, absolute error <= 1e-13.

double complete_K(double k);  // 0 <= k < 1
double complete_E(double k);  // 0 <= k <= 1, E(1) = 1

// K, E and their derivatives in k, valid for 0 < k < 1:
//   dE/dk = (E - K)/k
//   dK/dk = (E - (1-k^2) K) / (k (1-k^2))
struct EllipticEval {
  double K, E, dK, dE;
};
EllipticEval elliptic_derivatives(double k);

// Jacobi elliptic functions sn, cn, dn of argument u and modulus k in [0,1].
// k = 0 reduces to (sin, cos, 1), k = 1 to (tanh, sech, sech).
// Descending Landen (AGM) phase recursion with argument reduction mod 4K.
struct JacobiTriple {
  double sn, cn, dn;
};
JacobiTriple jacobi_sncndn(double u, double k);

}  // namespace phi4::elliptic
