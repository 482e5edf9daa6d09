#include "phi4/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phi4::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAgmTol = 1e-15;
constexpr int kAgmMaxIter = 40;

}  // namespace

double complete_K(double k) {
  if (!(k >= 0.0) || k >= 1.0)
    throw std::domain_error("complete_K: modulus must satisfy 0 <= k < 1");
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  for (int it = 0; it < kAgmMaxIter && std::abs(a - b) > kAgmTol * a; ++it) {
    const double am = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = am;
  }
  return kPi / (2.0 * a);
}

double complete_E(double k) {
  if (!(k >= 0.0) || k > 1.0)
    throw std::domain_error("complete_E: modulus must satisfy 0 <= k <= 1");
  if (k == 1.0) return 1.0;
  // E = K (1 - sum_{n>=0} 2^{n-1} c_n^2), c_0 = k, c_{n+1} = (a_n - b_n)/2.
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  double sum = 0.5 * k * k;
  double pow2 = 0.5;
  for (int it = 0; it < kAgmMaxIter && std::abs(a - b) > kAgmTol * a; ++it) {
    const double c = 0.5 * (a - b);
    const double am = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = am;
    pow2 *= 2.0;
    sum += pow2 * c * c;
  }
  return kPi / (2.0 * a) * (1.0 - sum);
}

EllipticEval elliptic_derivatives(double k) {
  if (!(k > 0.0) || k >= 1.0)
    throw std::domain_error("elliptic_derivatives: modulus must satisfy 0 < k < 1");
  EllipticEval r{};
  r.K = complete_K(k);
  r.E = complete_E(k);
  r.dE = (r.E - r.K) / k;
  const double k2c = (1.0 - k) * (1.0 + k);
  r.dK = (r.E - k2c * r.K) / (k * k2c);
  return r;
}

JacobiTriple jacobi_sncndn(double u, double k) {
  if (!(k >= 0.0) || k > 1.0)
    throw std::domain_error("jacobi_sncndn: modulus must satisfy 0 <= k <= 1");
  if (k == 1.0) {
    const double s = std::tanh(u);
    const double c = 1.0 / std::cosh(u);
    return {s, c, c};
  }

  // AGM ladder a_n, c_n up from (1, sqrt(1-k^2)).
  double a[kAgmMaxIter + 1], c[kAgmMaxIter + 1];
  a[0] = 1.0;
  c[0] = k;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  int n = 0;
  while (n < kAgmMaxIter && std::abs(c[n]) > kAgmTol * a[n]) {
    const double an = 0.5 * (a[n] + b);
    const double cn = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
    a[n] = an;
    c[n] = cn;
  }

  // Reduce the argument into [-2K, 2K]; keeps the top-level phase small.
  const double K = kPi / (2.0 * a[n]);
  const double ur = std::remainder(u, 4.0 * K);

  // Backward phase recursion: phi_{m-1} = (phi_m + asin((c_m/a_m) sin phi_m))/2.
  double phi = std::ldexp(1.0, n) * a[n] * ur;
  for (int m = n; m >= 1; --m) {
    const double s = std::clamp(c[m] / a[m] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(s));
  }

  JacobiTriple r{};
  r.sn = std::sin(phi);
  r.cn = std::cos(phi);
  // dn > 0 always, so the defining identity is the stable route.
  r.dn = std::sqrt(std::max(0.0, 1.0 - k * k * r.sn * r.sn));
  return r;
}

}  // namespace phi4::elliptic
