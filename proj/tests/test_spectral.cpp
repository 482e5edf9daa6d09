#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "phi4/elliptic.hpp"
#include "phi4/errors.hpp"
#include "phi4/fft.hpp"
#include "phi4/spectral.hpp"
#include "phi4/wave_families.hpp"

using namespace phi4;
using namespace phi4::spectral;
using waves::Family;

namespace {
constexpr double kPi = std::numbers::pi;

Eigen::VectorXd grid_function(int N, double L, double xi, bool sine) {
  Eigen::VectorXd v(N);
  for (int j = 0; j < N; ++j) v[j] = sine ? std::sin(xi * L * j / N) : std::cos(xi * L * j / N);
  return v;
}
}  // namespace

TEST_CASE("differentiation matrices act exactly on resolvable modes") {
  const int N = 64;
  const double L = 2.0 * kPi;
  const auto D2 = second_derivative_matrix(N, L);
  const auto D1 = first_derivative_matrix(N, L);
  CHECK((D2 - D2.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((D1 + D1.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  for (int m : {1, 3, 10, 25}) {
    const double xi = 2.0 * kPi * m / L;
    const auto s = grid_function(N, L, xi, true);
    const auto c = grid_function(N, L, xi, false);
    CHECK((D2 * s + xi * xi * s).cwiseAbs().maxCoeff() <= 1e-9 * xi * xi);
    CHECK((D1 * c + xi * s).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, xi));
  }
  // constants are annihilated
  CHECK((D2 * Eigen::VectorXd::Ones(N)).cwiseAbs().maxCoeff() <= 1e-11);
  CHECK((D1 * Eigen::VectorXd::Ones(N)).cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("flat potential reproduces the analytic Fourier spectrum") {
  const int N = 128;
  const double L = 2.0 * kPi, v0 = 0.37;
  HillSpec spec;
  spec.a = 1.0;
  spec.shift = 0.0;
  spec.L = L;
  spec.potential.assign(N, v0);
  const auto rep = eigensolve(hill_matrix(spec), N);
  std::vector<double> analytic;
  for (double xi : fft::wavenumbers(N, L)) analytic.push_back(xi * xi + v0);
  std::sort(analytic.begin(), analytic.end());
  for (int i = 0; i < N; ++i)
    CHECK(std::abs(rep.eigenvalues[i] - analytic[i]) <= 1e-10 * std::max(1.0, analytic[i]));
}

TEST_CASE("eigensolve basics") {
  Matrix M(2, 2);
  M << 2.0, 1.0, 1.0, 2.0;
  const auto rep = eigensolve(M, 2);
  CHECK(rep.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(rep.negative_count == 0);

  const auto repI = eigensolve(Matrix::Identity(8, 8), 8);
  for (double v : repI.eigenvalues) CHECK(v == doctest::Approx(1.0));

  Matrix bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(eigensolve(bad, 1), std::invalid_argument);
  CHECK_THROWS_AS(eigensolve(M, 0), std::invalid_argument);
  CHECK_THROWS_AS(eigensolve(M, 3), std::invalid_argument);
}

TEST_CASE("build_hill validates label, family, and grid") {
  const auto p = waves::solve_family(Family::SnSubluminal, 4.0 * kPi, 0.3);
  CHECK_THROWS_AS(build_hill(p, OperatorLabel::DnData, 128), std::domain_error);
  CHECK_THROWS_AS(build_hill(p, OperatorLabel::SnComplexReal, 128), std::domain_error);
  CHECK_THROWS_AS(build_hill(p, OperatorLabel::SnReal, 100), std::invalid_argument);
  CHECK_THROWS_AS(build_hill(p, OperatorLabel::SnReal, 32), std::invalid_argument);
  const auto M = build_hill(p, OperatorLabel::SnReal, 128);
  CHECK((M - M.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  // label round-trips
  for (auto lbl : {OperatorLabel::SnReal, OperatorLabel::SnComplexReal,
                   OperatorLabel::SnComplexImag, OperatorLabel::DnData, OperatorLabel::CnData})
    CHECK(label_from_name(label_name(lbl)) == lbl);
}

TEST_CASE("subluminal scalar spectrum matches the analytic eigenpairs") {
  const auto p = waves::solve_family(Family::SnSubluminal, 4.0 * kPi, 0.3);
  const auto rep = verify_sn_real_spectrum(p, 256);
  CHECK(rep.negative_count == 1);
  CHECK(std::abs(rep.eigenvalues[1]) <= kZeroTol);
  CHECK(rep.eigenvalues[0] < -kZeroTol);
  CHECK(std::abs(rep.eigenvalues[2] - 3.0 * (1.0 - 0.5 * p.beta1 * p.beta1)) <= 1e-5);
  CHECK(rep.zero_modes.size() == 1);
  CHECK(rep.oracle_errors.at("zero_mode_vs_profile_derivative") <= 1e-5);
  CHECK(rep.oracle_errors.at("second_mode_correlation_defect") <= 1e-4);

  // discrete kernel identity: the operator annihilates the sampled derivative
  const auto M = build_hill(p, OperatorLabel::SnReal, 256);
  const auto dphi = sample_profile_derivative(p, 256);
  CHECK((M * dphi).cwiseAbs().maxCoeff() <= 1e-6 * dphi.cwiseAbs().maxCoeff());
}

TEST_CASE("Floquet ordering of the low subluminal eigenfunctions") {
  const auto p = waves::solve_family(Family::SnSubluminal, 4.0 * kPi, 0.3);
  const auto M = build_hill(p, OperatorLabel::SnReal, 128);
  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  REQUIRE(es.info() == Eigen::Success);
  CHECK(count_sign_changes(es.eigenvectors().col(0)) == 0);
  CHECK(count_sign_changes(es.eigenvectors().col(1)) == 2);
  CHECK(count_sign_changes(es.eigenvectors().col(2)) == 2);
}

TEST_CASE("eigenvalues converge under grid doubling") {
  const auto p = waves::solve_family(Family::SnSubluminal, 4.0 * kPi, 0.3);
  const auto a = verify_sn_real_spectrum(p, 128);
  const auto b = verify_sn_real_spectrum(p, 256);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) <= 1e-8);

  const auto pc = waves::solve_family(Family::SnComplexStanding, 2.0 * kPi, 1.0);
  const auto [r256, i256] = verify_complex_spectra(pc, 256);
  const auto [r512, i512] = verify_complex_spectra(pc, 512);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(r256.eigenvalues[i] - r512.eigenvalues[i]) <= 1e-8);
    CHECK(std::abs(i256.eigenvalues[i] - i512.eigenvalues[i]) <= 1e-8);
  }
}

TEST_CASE("standing wave spectra match the analytic eigenvalues") {
  const auto p = waves::solve_family(Family::SnComplexStanding, 2.0 * kPi, 1.0);
  const auto [repR, repI] = verify_complex_spectra(p, 256);
  const double b1sq = p.beta1 * p.beta1, b2sq = p.beta2 * p.beta2;
  CHECK(repR.negative_count == 1);
  CHECK(repI.negative_count == 2);
  CHECK(repI.eigenvalues[0] == doctest::Approx(-0.5 * b1sq).epsilon(1e-7));
  CHECK(repI.eigenvalues[1] == doctest::Approx(-0.5 * b2sq).epsilon(1e-7));
  CHECK(std::abs(repR.eigenvalues[2] - (3.0 * p.omega - 1.5 * b1sq)) <= 1e-5);
  CHECK_FALSE(repR.zero_modes.empty());
  CHECK_FALSE(repI.zero_modes.empty());
  CHECK(repI.oracle_errors.at("zero_mode_vs_profile") <= 1e-5);
}

TEST_CASE("verification failure carries the offending report") {
  auto p = waves::solve_family(Family::SnSubluminal, 4.0 * kPi, 0.3);
  p.beta1 += 0.05;  // analytic targets no longer match the operator
  try {
    verify_sn_real_spectrum(p, 128);
    FAIL("expected a verification error");
  } catch (const VerificationError& e) {
    CHECK(!e.report.eigenvalues.empty());
    CHECK(std::string(e.what()).find("third eigenvalue") != std::string::npos);
  }
  auto pc = waves::solve_family(Family::SnComplexStanding, 2.0 * kPi, 1.0);
  pc.beta1 += 0.05;
  pc.beta2 = std::sqrt(2.0 * pc.omega - pc.beta1 * pc.beta1);
  CHECK_THROWS_AS(verify_complex_spectra(pc, 128), VerificationError);
}

TEST_CASE("sigma to lambda maps") {
  const auto p = waves::solve_family(Family::SnSubluminal, 4.0 * kPi, 0.3);
  const double ksq = p.kappa * p.kappa;
  CHECK(std::abs(lambda_from_sigma(p, OperatorLabel::SnReal, 1.0 + ksq)) <= 1e-13);
  CHECK(lambda_from_sigma(p, OperatorLabel::SnReal, 1.0 + 4.0 * ksq) ==
        doctest::Approx(3.0 * (1.0 - 0.5 * p.beta1 * p.beta1)).epsilon(1e-12));
  CHECK(sigma_from_lambda(p, OperatorLabel::SnReal,
                          lambda_from_sigma(p, OperatorLabel::SnReal, 2.2)) ==
        doctest::Approx(2.2).epsilon(1e-13));
  CHECK_THROWS_AS(lambda_from_sigma(p, OperatorLabel::DnData, 1.0), std::domain_error);

  const auto pc = waves::solve_family(Family::SnComplexStanding, 2.0 * kPi, 1.0);
  const double kcsq = pc.kappa * pc.kappa;
  CHECK(lambda_from_sigma(pc, OperatorLabel::SnComplexImag, kcsq) ==
        doctest::Approx(-0.5 * pc.beta1 * pc.beta1).epsilon(1e-12));
  CHECK(std::abs(lambda_from_sigma(pc, OperatorLabel::SnComplexImag, 1.0 + kcsq)) <= 1e-13);
}

TEST_CASE("scalar to vector eigenvalue reduction") {
  CHECK(vector_eigenvalue_from_scalar(0.7, 0.0) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK_THROWS_AS(vector_eigenvalue_from_scalar(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(vector_eigenvalue_from_scalar(-1.0, 1.0), std::domain_error);
  for (double mu_sq : {0.2, 1.0, 3.7}) {
    for (double c : {0.0, 0.5, 1.0, 2.0}) {
      const double lam_sq = vector_eigenvalue_from_scalar(mu_sq, c);
      CHECK(lam_sq > 0.0);
      const double roundtrip = lam_sq * (1.0 + c * c / (1.0 + lam_sq));
      CHECK(roundtrip == doctest::Approx(mu_sq).epsilon(1e-12));
    }
  }

  // the discretized 2x2 block attains -lambda^2 as its lowest eigenvalue
  const auto p = waves::solve_family(Family::SnComplexStanding, 2.0 * kPi, 1.0);
  const auto scalar = eigensolve(build_hill(p, OperatorLabel::SnComplexReal, 128), 1);
  const double mu_sq = -scalar.eigenvalues[0];
  REQUIRE(mu_sq > 0.0);
  const double lam_sq = vector_eigenvalue_from_scalar(mu_sq, p.c);
  const auto block = eigensolve(vector_block_matrix(p, 128, false), 1);
  CHECK(std::abs(block.eigenvalues[0] + lam_sq) <= 1e-6);
}

TEST_CASE("odd restriction basis is orthonormal and odd") {
  const int N = 64;
  const auto B = odd_restriction_basis(N);
  CHECK(B.rows() == N);
  CHECK(B.cols() == N / 2 - 1);
  CHECK((B.transpose() * B - Matrix::Identity(N / 2 - 1, N / 2 - 1)).cwiseAbs().maxCoeff() <=
        1e-12);
  for (int m = 0; m < B.cols(); ++m) {
    CHECK(std::abs(B(0, m)) <= 1e-15);
    for (int j = 1; j < N; ++j) CHECK(std::abs(B(j, m) + B(N - j, m)) <= 1e-13);
  }
}

TEST_CASE("odd projection removes the even negative directions and even kernels") {
  const auto p = waves::solve_family(Family::SnComplexStanding, 2.0 * kPi, 1.0);
  const int N = 128;
  const auto B = odd_restriction_basis(N);
  const auto B2 = block_diag2(B);

  // scalar operators restricted to odd grid functions: no negative directions
  for (auto lbl : {OperatorLabel::SnComplexReal, OperatorLabel::SnComplexImag}) {
    const auto rep = eigensolve(restricted(build_hill(p, lbl, N), B), 4);
    CHECK(rep.negative_count == 0);
  }

  // vector blocks: no negatives either; kernel survives only in the block
  // whose zero mode is the odd profile itself
  const auto repR = eigensolve(restricted(vector_block_matrix(p, N, false), B2), 4);
  CHECK(repR.negative_count == 0);
  CHECK(repR.zero_modes.empty());
  const auto repI = eigensolve(restricted(vector_block_matrix(p, N, true), B2), 4);
  CHECK(repI.negative_count == 0);
  CHECK(repI.zero_modes.size() == 1);
  CHECK(repI.eigenvalues[1] > kZeroTol);
}

TEST_CASE("traveling vector block has a single negative direction") {
  const auto p = waves::solve_family(Family::SnSubluminal, 4.0 * kPi, 0.3);
  const auto rep = eigensolve(traveling_block_matrix(p, 128), 4);
  CHECK(rep.negative_count == 1);
  CHECK(!rep.zero_modes.empty());
  const auto pc = waves::solve_family(Family::SnComplexStanding, 2.0 * kPi, 1.0);
  CHECK_THROWS_AS(traveling_block_matrix(pc, 128), std::domain_error);
  CHECK_THROWS_AS(vector_block_matrix(p, 128, false), std::domain_error);
}

TEST_CASE("superluminal operators build and diagonalize as data") {
  const auto pd = waves::solve_family(Family::DnSuperluminal, 2.0 * kPi, 1.2);
  const auto repd = eigensolve(build_hill(pd, OperatorLabel::DnData, 128), 4);
  CHECK(!repd.eigenvalues.empty());
  const auto kernel = build_hill(pd, OperatorLabel::DnData, 128) *
                      sample_profile_derivative(pd, 128);
  CHECK(kernel.cwiseAbs().maxCoeff() <=
        1e-6 * sample_profile_derivative(pd, 128).cwiseAbs().maxCoeff());

  const auto pcn = waves::solve_family(Family::CnSuperluminal, 2.0 * kPi, 1.5);
  const auto repc = eigensolve(build_hill(pcn, OperatorLabel::CnData, 128), 4);
  CHECK(!repc.eigenvalues.empty());
}

TEST_CASE("spectrum report serializes to JSON") {
  const auto p = waves::solve_family(Family::SnSubluminal, 4.0 * kPi, 0.3);
  const auto rep = verify_sn_real_spectrum(p, 128);
  const auto s = spectrum_report_json(rep);
  CHECK(s.find("\"label\": \"L_sn_real\"") != std::string::npos);
  CHECK(s.find("\"negative_count\": 1") != std::string::npos);
  CHECK(s.find("oracle_errors") != std::string::npos);
}
