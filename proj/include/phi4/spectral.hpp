#pragma once
// Linearized operators around the periodic waves: dense Fourier
// differentiation matrices, Hill-type scalar operators, their 2x2 vector
// blocks, symmetric eigensolves, and verification of the analytically known
// low-lying eigenpairs.

#include <Eigen/Dense>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "phi4/wave_families.hpp"

namespace phi4::spectral {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A discrete eigenvalue within kZeroTol of zero counts as the analytic zero
// mode; this sits far below the smallest nonzero gap 3(1 - beta1^2/2) of the
// solvable waves.
inline constexpr double kZeroTol = 1e-6;

enum class OperatorLabel { SnReal, SnComplexReal, SnComplexImag, DnData, CnData };

std::string label_name(OperatorLabel label);
OperatorLabel label_from_name(const std::string& name);

// -a f'' - shift f + V f with periodic boundary on [0, L).
struct HillSpec {
  OperatorLabel label = OperatorLabel::SnReal;
  double a = 1.0;
  double shift = 0.0;
  std::vector<double> potential;  // V(x_j), x_j = j L / N
  double L = 0.0;
};

// Dense spectral differentiation matrices on N uniform grid points.
Matrix second_derivative_matrix(int N, double L);  // symmetric
Matrix first_derivative_matrix(int N, double L);   // antisymmetric, Nyquist dropped

HillSpec hill_spec_for(const waves::WaveParams& params, OperatorLabel label, int N);
Matrix hill_matrix(const HillSpec& spec);
Matrix build_hill(const waves::WaveParams& params, OperatorLabel label, int N);

struct EigenPair {
  double value = 0.0;
  Vector vector;
};

struct SpectrumReport {
  OperatorLabel label = OperatorLabel::SnReal;
  int N = 0;
  std::vector<double> eigenvalues;              // m lowest, ascending
  int negative_count = 0;                       // #{lambda < -kZeroTol}, full spectrum
  std::vector<EigenPair> zero_modes;            // |lambda| <= kZeroTol among reported
  std::map<std::string, double> oracle_errors;  // named analytic checks
};

struct VerificationError : std::runtime_error {
  SpectrumReport report;
  VerificationError(const std::string& what_arg, SpectrumReport rep)
      : std::runtime_error(what_arg), report(std::move(rep)) {}
};

// m lowest eigenpairs of a symmetric matrix; postconditions: each residual
// ||Mv - lambda v|| <= 1e-9 and pairwise orthonormality to 1e-10.
SpectrumReport eigensolve(const Matrix& M, int m);

SpectrumReport verify_sn_real_spectrum(const waves::WaveParams& params, int N);
std::pair<SpectrumReport, SpectrumReport> verify_complex_spectra(
    const waves::WaveParams& params, int N);

// Positive root lambda^2 of lambda^4 + (1 + c^2 - mu^2) lambda^2 - mu^2 = 0.
double vector_eigenvalue_from_scalar(double mu_sq, double c);

// Conversions between the scaled Lame eigenvalue sigma and the operator
// eigenvalue lambda: real traveling convention lambda = omega ell^2 sigma - 1,
// standing convention lambda = ell^2 sigma - (1 + c^2).
double lambda_from_sigma(const waves::WaveParams& params, OperatorLabel label, double sigma);
double sigma_from_lambda(const waves::WaveParams& params, OperatorLabel label, double lambda);

Matrix odd_restriction_basis(int N);  // N x (N/2 - 1) orthonormal sine columns
Matrix block_diag2(const Matrix& B);
Matrix restricted(const Matrix& M, const Matrix& B);  // B^T M B

// 2x2 vector blocks of the second variation. Standing wave, block ordering
// (Re phi1, Im phi2) resp. (Im phi1, Re phi2):
//   [[-D2 - I + diag(3 psi^2), -cI], [-cI, I]]   (imag_block = false)
//   [[-D2 - I + diag(psi^2),   +cI], [+cI, I]]   (imag_block = true)
Matrix vector_block_matrix(const waves::WaveParams& params, int N, bool imag_block);
// Real traveling wave, ordering (phi1, phi2):
//   [[-D2 - I + diag(3 phi^2), -c D1], [c D1, I]]
Matrix traveling_block_matrix(const waves::WaveParams& params, int N);

Vector sample_profile(const waves::WaveParams& params, int N);
Vector sample_profile_derivative(const waves::WaveParams& params, int N);

int negative_count(const std::vector<double>& eigenvalues, double tol = kZeroTol);
int count_sign_changes(const Vector& v, double rel_tol = 1e-7);

std::string spectrum_report_json(const SpectrumReport& report);

}  // namespace phi4::spectral
