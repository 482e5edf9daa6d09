#include "phi4/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "phi4/elliptic.hpp"
#include "phi4/errors.hpp"
#include "phi4/fft.hpp"

namespace phi4::spectral {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Angle 2*pi*(m*r mod N)/N; the modular reduction keeps sin/cos accurate for
// large m*r, where naive 2*pi*m*r/N loses the low bits that matter here.
double unit_angle(long long m, long long r, int N) {
  const long long q = ((m * r) % N + N) % N;
  return kTwoPi * static_cast<double>(q) / static_cast<double>(N);
}

void check_grid_size(int N) {
  if (!is_pow2(N) || N < 64)
    throw std::invalid_argument("grid size must be a power of two, at least 64");
}

struct DenseEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns, orthonormal, sign-normalized
};

// Full symmetric diagonalization with residual and orthonormality
// postconditions enforced on the lowest m pairs.
DenseEigen dense_eigensolve(const Matrix& M, int m) {
  const auto n = M.rows();
  if (n == 0 || M.cols() != n) throw std::invalid_argument("matrix must be square");
  if (m < 1 || m > n) throw std::invalid_argument("eigenpair count out of range");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("matrix must be symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("symmetric eigensolver failed to converge");

  DenseEigen out;
  out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  out.vectors = es.eigenvectors().leftCols(m);
  for (int i = 0; i < m; ++i) {
    Eigen::Index imax = 0;
    out.vectors.col(i).cwiseAbs().maxCoeff(&imax);
    if (out.vectors.col(i)[imax] < 0.0) out.vectors.col(i) = -out.vectors.col(i);
    const double resid = (M * out.vectors.col(i) - out.values[i] * out.vectors.col(i)).norm();
    if (!(resid <= 1e-9)) throw ConvergenceError("eigenpair residual exceeds 1e-9");
  }
  const Matrix gram = out.vectors.transpose() * out.vectors - Matrix::Identity(m, m);
  if (!(gram.cwiseAbs().maxCoeff() <= 1e-10))
    throw ConvergenceError("eigenvectors not orthonormal to 1e-10");
  return out;
}

SpectrumReport report_from(const DenseEigen& eig, int m, OperatorLabel label) {
  SpectrumReport rep;
  rep.label = label;
  rep.N = static_cast<int>(eig.values.size());
  rep.eigenvalues.assign(eig.values.begin(), eig.values.begin() + m);
  rep.negative_count = negative_count(eig.values);
  for (int i = 0; i < m; ++i)
    if (std::abs(eig.values[i]) <= kZeroTol)
      rep.zero_modes.push_back({eig.values[i], eig.vectors.col(i)});
  return rep;
}

// max-norm distance after unit normalization, with b's sign chosen to match a.
// Per-vector sign conventions (e.g. largest entry positive) are ambiguous here:
// the kernel shapes take each magnitude twice with opposite signs.
double aligned_max_diff(const Vector& a, const Vector& b) {
  Vector ua = a, ub = b;
  if (ua.norm() > 0.0) ua /= ua.norm();
  if (ub.norm() > 0.0) ub /= ub.norm();
  if (ua.dot(ub) < 0.0) ub = -ub;
  return (ua - ub).cwiseAbs().maxCoeff();
}

double correlation(const Vector& a, const Vector& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace

std::string label_name(OperatorLabel label) {
  switch (label) {
    case OperatorLabel::SnReal: return "L_sn_real";
    case OperatorLabel::SnComplexReal: return "L_sn_R";
    case OperatorLabel::SnComplexImag: return "L_sn_I";
    case OperatorLabel::DnData: return "L_dn";
    case OperatorLabel::CnData: return "L_cn";
  }
  throw std::invalid_argument("unknown operator label");
}

OperatorLabel label_from_name(const std::string& name) {
  if (name == "L_sn_real") return OperatorLabel::SnReal;
  if (name == "L_sn_R") return OperatorLabel::SnComplexReal;
  if (name == "L_sn_I") return OperatorLabel::SnComplexImag;
  if (name == "L_dn") return OperatorLabel::DnData;
  if (name == "L_cn") return OperatorLabel::CnData;
  throw std::invalid_argument("unknown operator label: " + name);
}

Matrix second_derivative_matrix(int N, double L) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("grid size must be even, at least 2");
  if (!(L > 0.0)) throw std::invalid_argument("domain length must be positive");
  const auto xi = fft::wavenumbers(N, L);
  std::vector<double> row(N);
  for (int r = 0; r < N; ++r) {
    double s = 0.0;
    for (int m = 0; m < N; ++m) s -= xi[m] * xi[m] * std::cos(unit_angle(m, r, N));
    row[r] = s / N;
  }
  Matrix M(N, N);
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l) M(j, l) = row[(j - l + N) % N];
  return 0.5 * (M + Matrix(M.transpose()));
}

Matrix first_derivative_matrix(int N, double L) {
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("grid size must be even, at least 2");
  if (!(L > 0.0)) throw std::invalid_argument("domain length must be positive");
  const auto xi = fft::wavenumbers(N, L);
  std::vector<double> row(N);
  for (int r = 0; r < N; ++r) {
    double s = 0.0;
    for (int m = 0; m < N; ++m) {
      if (m == N / 2) continue;  // odd symbol: Nyquist carries no derivative
      s -= xi[m] * std::sin(unit_angle(m, r, N));
    }
    row[r] = s / N;
  }
  Matrix M(N, N);
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l) M(j, l) = row[(j - l + N) % N];
  return 0.5 * (M - Matrix(M.transpose()));
}

HillSpec hill_spec_for(const waves::WaveParams& params, OperatorLabel label, int N) {
  check_grid_size(N);
  using waves::Family;
  HillSpec spec;
  spec.label = label;
  spec.L = params.L;
  double mult = 3.0;
  switch (label) {
    case OperatorLabel::SnReal:
      if (params.family != Family::SnSubluminal)
        throw std::domain_error("L_sn_real requires the sn-subluminal family");
      spec.a = 1.0 - params.c * params.c;
      spec.shift = 1.0;
      break;
    case OperatorLabel::SnComplexReal:
    case OperatorLabel::SnComplexImag:
      if (params.family != Family::SnComplexStanding)
        throw std::domain_error(label_name(label) + " requires the sn-complex family");
      spec.a = 1.0;
      spec.shift = 1.0 + params.c * params.c;
      if (label == OperatorLabel::SnComplexImag) mult = 1.0;
      break;
    case OperatorLabel::DnData:
      if (params.family != Family::DnSuperluminal)
        throw std::domain_error("L_dn requires the dn family");
      // same quadratic-form coefficient as the subluminal case; a < 0 here,
      // so the operator is unbounded below but still annihilates the
      // profile derivative.
      spec.a = 1.0 - params.c * params.c;
      spec.shift = 1.0;
      break;
    case OperatorLabel::CnData:
      if (params.family != Family::CnSuperluminal)
        throw std::domain_error("L_cn requires the cn family");
      spec.a = 1.0 - params.c * params.c;
      spec.shift = 1.0;
      break;
  }
  const Vector phi = sample_profile(params, N);
  spec.potential.resize(N);
  for (int j = 0; j < N; ++j) spec.potential[j] = mult * phi[j] * phi[j];
  return spec;
}

Matrix hill_matrix(const HillSpec& spec) {
  const int N = static_cast<int>(spec.potential.size());
  if (N < 2) throw std::invalid_argument("potential must be sampled on the grid");
  Matrix M = -spec.a * second_derivative_matrix(N, spec.L);
  for (int j = 0; j < N; ++j) M(j, j) += spec.potential[j] - spec.shift;
  return 0.5 * (M + Matrix(M.transpose()));
}

Matrix build_hill(const waves::WaveParams& params, OperatorLabel label, int N) {
  return hill_matrix(hill_spec_for(params, label, N));
}

SpectrumReport eigensolve(const Matrix& M, int m) {
  return report_from(dense_eigensolve(M, m), m, OperatorLabel::SnReal);
}

SpectrumReport verify_sn_real_spectrum(const waves::WaveParams& params, int N) {
  const Matrix M = build_hill(params, OperatorLabel::SnReal, N);
  const int m = std::min(8, N);
  const DenseEigen eig = dense_eigensolve(M, m);
  SpectrumReport rep = report_from(eig, m, OperatorLabel::SnReal);

  std::ostringstream fail;
  if (rep.negative_count != 1)
    fail << "negative count " << rep.negative_count << " != 1; ";

  const double lam2 = eig.values[1];
  rep.oracle_errors["lambda2_abs"] = std::abs(lam2);
  if (!(std::abs(lam2) <= kZeroTol)) fail << "second eigenvalue " << lam2 << " not zero; ";

  const double lam3_target = 3.0 * (1.0 - 0.5 * params.beta1 * params.beta1);
  rep.oracle_errors["lambda3_vs_formula"] = std::abs(eig.values[2] - lam3_target);
  if (!(rep.oracle_errors["lambda3_vs_formula"] <= 1e-5))
    fail << "third eigenvalue " << eig.values[2] << " vs " << lam3_target << "; ";

  const Vector dphi = sample_profile_derivative(params, N);
  rep.oracle_errors["zero_mode_vs_profile_derivative"] = aligned_max_diff(eig.vectors.col(1), dphi);
  if (!(rep.oracle_errors["zero_mode_vs_profile_derivative"] <= 1e-5))
    fail << "zero mode does not match the profile derivative; ";

  rep.oracle_errors["ground_state_sign_changes"] = count_sign_changes(eig.vectors.col(0));
  if (count_sign_changes(eig.vectors.col(0)) != 0) fail << "ground state changes sign; ";

  // second eigenfunction against cn(ell x) dn(ell x)
  Vector y1(N);
  for (int j = 0; j < N; ++j) {
    const auto t = elliptic::jacobi_sncndn(params.ell * (params.L * j / N), params.kappa);
    y1[j] = t.cn * t.dn;
  }
  rep.oracle_errors["second_mode_correlation_defect"] = 1.0 - correlation(eig.vectors.col(1), y1);
  if (!(rep.oracle_errors["second_mode_correlation_defect"] <= 1e-4))
    fail << "second eigenfunction decorrelates from cn*dn; ";

  if (!fail.str().empty())
    throw VerificationError("sn real spectrum verification failed: " + fail.str(), rep);
  return rep;
}

std::pair<SpectrumReport, SpectrumReport> verify_complex_spectra(const waves::WaveParams& params,
                                                                 int N) {
  const double b1sq = params.beta1 * params.beta1;
  const double b2sq = params.beta2 * params.beta2;
  const int m = std::min(8, N);

  const DenseEigen eigR = dense_eigensolve(build_hill(params, OperatorLabel::SnComplexReal, N), m);
  SpectrumReport repR = report_from(eigR, m, OperatorLabel::SnComplexReal);
  std::ostringstream fail;
  if (repR.negative_count != 1)
    fail << "L_sn_R negative count " << repR.negative_count << " != 1; ";
  if (repR.zero_modes.empty()) fail << "L_sn_R zero mode missing; ";
  const double lam3_target = 3.0 * (1.0 + params.c * params.c) - 1.5 * b1sq;
  repR.oracle_errors["lambda3_vs_formula"] = std::abs(eigR.values[2] - lam3_target);
  if (!(repR.oracle_errors["lambda3_vs_formula"] <= 1e-5))
    fail << "L_sn_R third eigenvalue " << eigR.values[2] << " vs " << lam3_target << "; ";

  const DenseEigen eigI = dense_eigensolve(build_hill(params, OperatorLabel::SnComplexImag, N), m);
  SpectrumReport repI = report_from(eigI, m, OperatorLabel::SnComplexImag);
  if (repI.negative_count != 2)
    fail << "L_sn_I negative count " << repI.negative_count << " != 2; ";
  repI.oracle_errors["lambda1_vs_formula"] = std::abs(eigI.values[0] + 0.5 * b1sq);
  if (!(repI.oracle_errors["lambda1_vs_formula"] <= 1e-5))
    fail << "L_sn_I first eigenvalue " << eigI.values[0] << " vs " << -0.5 * b1sq << "; ";
  repI.oracle_errors["lambda2_vs_formula"] = std::abs(eigI.values[1] + 0.5 * b2sq);
  if (!(repI.oracle_errors["lambda2_vs_formula"] <= 1e-5))
    fail << "L_sn_I second eigenvalue " << eigI.values[1] << " vs " << -0.5 * b2sq << "; ";
  if (repI.zero_modes.empty()) {
    fail << "L_sn_I zero mode missing; ";
  } else {
    const Vector psi = sample_profile(params, N);
    repI.oracle_errors["zero_mode_vs_profile"] =
        aligned_max_diff(repI.zero_modes.front().vector, psi);
    if (!(repI.oracle_errors["zero_mode_vs_profile"] <= 1e-5))
      fail << "L_sn_I zero mode does not match the profile; ";
  }
  repI.oracle_errors["lambda1_sign_changes"] = count_sign_changes(eigI.vectors.col(0));
  repI.oracle_errors["lambda2_sign_changes"] = count_sign_changes(eigI.vectors.col(1));
  if (count_sign_changes(eigI.vectors.col(0)) != 0)
    fail << "L_sn_I ground state changes sign; ";
  if (count_sign_changes(eigI.vectors.col(1)) != 2)
    fail << "L_sn_I second eigenfunction does not have two zeros; ";

  if (!fail.str().empty())
    throw VerificationError("complex spectra verification failed: " + fail.str(),
                            repR.negative_count != 1 ? repR : repI);
  return {repR, repI};
}

double vector_eigenvalue_from_scalar(double mu_sq, double c) {
  if (!(mu_sq > 0.0)) throw std::domain_error("scalar eigenvalue magnitude must be positive");
  const double b = 1.0 + c * c - mu_sq;
  const double disc = std::sqrt(b * b + 4.0 * mu_sq);
  return b > 0.0 ? 2.0 * mu_sq / (b + disc) : 0.5 * (disc - b);
}

double lambda_from_sigma(const waves::WaveParams& params, OperatorLabel label, double sigma) {
  const double lsq = params.ell * params.ell;
  switch (label) {
    case OperatorLabel::SnReal:
      return params.omega * lsq * sigma - 1.0;
    case OperatorLabel::SnComplexReal:
    case OperatorLabel::SnComplexImag:
      return lsq * sigma - params.omega;  // omega = 1 + c^2 for the standing family
    default:
      throw std::domain_error("sigma map defined for the sn conventions only");
  }
}

double sigma_from_lambda(const waves::WaveParams& params, OperatorLabel label, double lambda) {
  const double lsq = params.ell * params.ell;
  switch (label) {
    case OperatorLabel::SnReal:
      return (1.0 + lambda) / (params.omega * lsq);
    case OperatorLabel::SnComplexReal:
    case OperatorLabel::SnComplexImag:
      return (params.omega + lambda) / lsq;
    default:
      throw std::domain_error("sigma map defined for the sn conventions only");
  }
}

Matrix odd_restriction_basis(int N) {
  if (N < 4 || N % 2 != 0) throw std::invalid_argument("grid size must be even, at least 4");
  const int cols = N / 2 - 1;
  Matrix B(N, cols);
  const double scale = std::sqrt(2.0 / N);
  for (int m = 1; m <= cols; ++m)
    for (int j = 0; j < N; ++j) B(j, m - 1) = scale * std::sin(unit_angle(m, j, N));
  return B;
}

Matrix block_diag2(const Matrix& B) {
  Matrix out = Matrix::Zero(2 * B.rows(), 2 * B.cols());
  out.topLeftCorner(B.rows(), B.cols()) = B;
  out.bottomRightCorner(B.rows(), B.cols()) = B;
  return out;
}

Matrix restricted(const Matrix& M, const Matrix& B) {
  if (M.cols() != B.rows()) throw std::invalid_argument("basis does not match the operator");
  return B.transpose() * M * B;
}

Matrix vector_block_matrix(const waves::WaveParams& params, int N, bool imag_block) {
  if (params.family != waves::Family::SnComplexStanding)
    throw std::domain_error("vector blocks are defined for the sn-complex family");
  check_grid_size(N);
  const Vector psi = sample_profile(params, N);
  Matrix A = -second_derivative_matrix(N, params.L);
  const double mult = imag_block ? 1.0 : 3.0;
  for (int j = 0; j < N; ++j) A(j, j) += mult * psi[j] * psi[j] - 1.0;
  const double off = imag_block ? params.c : -params.c;
  Matrix M = Matrix::Zero(2 * N, 2 * N);
  M.topLeftCorner(N, N) = A;
  M.bottomRightCorner(N, N) = Matrix::Identity(N, N);
  M.topRightCorner(N, N) = off * Matrix::Identity(N, N);
  M.bottomLeftCorner(N, N) = off * Matrix::Identity(N, N);
  return M;
}

Matrix traveling_block_matrix(const waves::WaveParams& params, int N) {
  if (params.family == waves::Family::SnComplexStanding)
    throw std::domain_error("traveling block is defined for the real families");
  check_grid_size(N);
  const Vector phi = sample_profile(params, N);
  Matrix A = -second_derivative_matrix(N, params.L);
  for (int j = 0; j < N; ++j) A(j, j) += 3.0 * phi[j] * phi[j] - 1.0;
  const Matrix D1 = first_derivative_matrix(N, params.L);
  Matrix M(2 * N, 2 * N);
  M.topLeftCorner(N, N) = A;
  M.topRightCorner(N, N) = -params.c * D1;
  M.bottomLeftCorner(N, N) = params.c * D1;
  M.bottomRightCorner(N, N) = Matrix::Identity(N, N);
  return 0.5 * (M + Matrix(M.transpose()));
}

Vector sample_profile(const waves::WaveParams& params, int N) {
  Vector v(N);
  for (int j = 0; j < N; ++j) v[j] = waves::profile(params, params.L * j / N).real();
  return v;
}

Vector sample_profile_derivative(const waves::WaveParams& params, int N) {
  Vector v(N);
  for (int j = 0; j < N; ++j) v[j] = waves::profile_x(params, params.L * j / N).real();
  return v;
}

int negative_count(const std::vector<double>& eigenvalues, double tol) {
  int n = 0;
  for (double v : eigenvalues) n += v < -tol ? 1 : 0;
  return n;
}

int count_sign_changes(const Vector& v, double rel_tol) {
  const double thresh = rel_tol * v.cwiseAbs().maxCoeff();
  std::vector<int> signs;
  for (Eigen::Index j = 0; j < v.size(); ++j)
    if (std::abs(v[j]) > thresh) signs.push_back(v[j] > 0.0 ? 1 : -1);
  if (signs.size() < 2) return 0;
  signs.push_back(signs.front());  // periodic wraparound
  int flips = 0;
  for (std::size_t i = 1; i < signs.size(); ++i) flips += signs[i] != signs[i - 1] ? 1 : 0;
  return flips;
}

std::string spectrum_report_json(const SpectrumReport& report) {
  nlohmann::json j;
  j["label"] = label_name(report.label);
  j["N"] = report.N;
  j["eigenvalues"] = report.eigenvalues;
  j["negative_count"] = report.negative_count;
  j["zero_tol"] = kZeroTol;
  j["oracle_errors"] = report.oracle_errors;
  return j.dump(2);
}

}  // namespace phi4::spectral
