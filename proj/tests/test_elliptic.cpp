#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "phi4/elliptic.hpp"
#include "phi4/fft.hpp"
#include "phi4/quadrature.hpp"

using namespace phi4::elliptic;
namespace quad = phi4::quad;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent quadrature oracles for the defining integrals.
double K_quad(double k) {
  return quad::adaptive_simpson(
      [k](double th) {
        const double s = std::sin(th);
        return 1.0 / std::sqrt(1.0 - k * k * s * s);
      },
      0.0, kPi / 2.0, 1e-14);
}

double E_quad(double k) {
  return quad::adaptive_simpson(
      [k](double th) {
        const double s = std::sin(th);
        return std::sqrt(1.0 - k * k * s * s);
      },
      0.0, kPi / 2.0, 1e-14);
}

}  // namespace

TEST_CASE("complete integrals at the endpoints") {
  CHECK(complete_K(0.0) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(complete_E(0.0) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(complete_E(1.0) == 1.0);
  CHECK(complete_K(0.999999) > 7.0);
}

TEST_CASE("complete integrals match quadrature of the defining integrals") {
  for (double k : {0.05, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999}) {
    CHECK(std::abs(complete_K(k) - K_quad(k)) <= 1e-12);
    CHECK(std::abs(complete_E(k) - E_quad(k)) <= 1e-12);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(complete_K(-0.1), std::domain_error);
  CHECK_THROWS_AS(complete_K(1.0), std::domain_error);
  CHECK_THROWS_AS(complete_E(1.5), std::domain_error);
  CHECK_THROWS_AS(complete_E(-1e-9), std::domain_error);
  CHECK_THROWS_AS(elliptic_derivatives(0.0), std::domain_error);
  CHECK_THROWS_AS(elliptic_derivatives(1.0), std::domain_error);
  CHECK_THROWS_AS(jacobi_sncndn(0.3, -0.2), std::domain_error);
  CHECK_THROWS_AS(jacobi_sncndn(0.3, 1.2), std::domain_error);
}

TEST_CASE("derivative formulas agree with central differences") {
  const double h = 1e-6;
  for (double k : {0.2, 0.45, 0.6, 0.8, 0.95}) {
    const auto ev = elliptic_derivatives(k);
    const double dK_fd = (complete_K(k + h) - complete_K(k - h)) / (2.0 * h);
    const double dE_fd = (complete_E(k + h) - complete_E(k - h)) / (2.0 * h);
    CHECK(ev.dK == doctest::Approx(dK_fd).epsilon(1e-6));
    CHECK(ev.dE == doctest::Approx(dE_fd).epsilon(1e-6));
  }
}

TEST_CASE("derivative signs and the small-k slope of K") {
  for (double k = 0.05; k < 1.0; k += 0.05) {
    const auto ev = elliptic_derivatives(k);
    CHECK(ev.dK > 0.0);
    CHECK(ev.dE < 0.0);
    CHECK(ev.E < ev.K);
  }
  // K(k) ~ pi/2 (1 + k^2/4), so dK/dk ~ pi k / 4 near zero.
  const double k = 1e-4;
  CHECK(elliptic_derivatives(k).dK ==
        doctest::Approx(kPi * k / 4.0).epsilon(1e-3));
}

TEST_CASE("E+K and E*K are strictly increasing in k") {
  double prev_sum = -1.0, prev_prod = -1.0;
  for (double k = 0.0; k < 0.9995; k += 0.005) {
    const double K = complete_K(k), E = complete_E(k);
    CHECK(E + K > prev_sum);
    CHECK(E * K > prev_prod);
    prev_sum = E + K;
    prev_prod = E * K;
  }
}

TEST_CASE("jacobi special values") {
  for (double k : {0.0, 0.3, 0.8, 0.999}) {
    const auto j = jacobi_sncndn(0.0, k);
    CHECK(j.sn == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(j.cn == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(j.dn == doctest::Approx(1.0).epsilon(1e-15));
  }
  for (double u = -3.0; u <= 3.0; u += 0.37) {
    const auto j = jacobi_sncndn(u, 0.0);
    CHECK(std::abs(j.sn - std::sin(u)) <= 1e-14);
    CHECK(std::abs(j.cn - std::cos(u)) <= 1e-14);
    CHECK(std::abs(j.dn - 1.0) <= 1e-14);
  }
  for (double u = -20.0; u <= 20.0; u += 1.7) {
    const auto j = jacobi_sncndn(u, 1.0);
    CHECK(std::abs(j.sn - std::tanh(u)) <= 1e-12);
    CHECK(std::abs(j.cn - 1.0 / std::cosh(u)) <= 1e-12);
    CHECK(std::abs(j.dn - 1.0 / std::cosh(u)) <= 1e-12);
  }
}

TEST_CASE("jacobi identities and ranges on a dense grid") {
  for (double k = 0.0; k <= 0.999; k += 0.0333) {
    const double kc2 = 1.0 - k * k;
    for (double u = -12.0; u <= 12.0; u += 0.4) {
      const auto j = jacobi_sncndn(u, k);
      CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) <= 1e-12);
      CHECK(std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0) <= 1e-12);
      CHECK(j.dn >= std::sqrt(kc2) - 1e-12);
      CHECK(j.dn <= 1.0 + 1e-12);
      CHECK(std::abs(j.sn) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("jacobi parity and periodicity") {
  for (double k : {0.2, 0.65, 0.93}) {
    const double K = complete_K(k);
    for (double u = -7.0; u <= 7.0; u += 0.61) {
      const auto jp = jacobi_sncndn(u, k);
      const auto jm = jacobi_sncndn(-u, k);
      CHECK(std::abs(jp.sn + jm.sn) <= 1e-13);
      CHECK(std::abs(jp.cn - jm.cn) <= 1e-13);
      CHECK(std::abs(jp.dn - jm.dn) <= 1e-13);
      const auto js = jacobi_sncndn(u + 4.0 * K, k);
      CHECK(std::abs(jp.sn - js.sn) <= 1e-11);
      CHECK(std::abs(jp.cn - js.cn) <= 1e-11);
      const auto jd = jacobi_sncndn(u + 2.0 * K, k);
      CHECK(std::abs(jp.dn - jd.dn) <= 1e-11);
      CHECK(std::abs(jp.sn + jd.sn) <= 1e-11);  // sn is 2K-antiperiodic
    }
  }
}

// The sampled functions must solve their first-order ODEs with a derivative
// obtained by spectral differentiation, independent of the evaluator.
TEST_CASE("jacobi ODE residuals under spectral differentiation") {
  const int n = 512;
  for (double k : {0.35, 0.8, 0.97}) {
    const double K = complete_K(k);
    const double period = 4.0 * K;
    phi4::fft::cvec sn(n), cn(n), dn(n);
    for (int i = 0; i < n; ++i) {
      const auto j = jacobi_sncndn(period * i / n, k);
      sn[i] = j.sn;
      cn[i] = j.cn;
      dn[i] = j.dn;
    }
    const auto dsn = phi4::fft::derivative(sn, period);
    const auto dcn = phi4::fft::derivative(cn, period);
    const auto ddn = phi4::fft::derivative(dn, period);
    for (int i = 0; i < n; ++i) {
      const double s = sn[i].real(), c = cn[i].real(), d = dn[i].real();
      CHECK(std::abs(dsn[i].real() * dsn[i].real() -
                     (1.0 - s * s) * (1.0 - k * k * s * s)) <= 1e-9);
      CHECK(std::abs(dcn[i].real() * dcn[i].real() -
                     (1.0 - c * c) * (1.0 - k * k + k * k * c * c)) <= 1e-9);
      CHECK(std::abs(ddn[i].real() * ddn[i].real() -
                     (1.0 - d * d) * (d * d - 1.0 + k * k)) <= 1e-9);
      // first-derivative identities
      CHECK(std::abs(dsn[i].real() - c * d) <= 1e-10);
      CHECK(std::abs(dcn[i].real() + s * d) <= 1e-10);
      CHECK(std::abs(ddn[i].real() + k * k * s * c) <= 1e-10);
    }
  }
}
