#include "phi4/stability.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "json.hpp"

#include "phi4/elliptic.hpp"
#include "phi4/errors.hpp"
#include "phi4/spectral.hpp"

namespace phi4::stability {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool traveling_real(waves::Family f) {
  return f == waves::Family::SnSubluminal;
}

bool standing_complex(waves::Family f) {
  return f == waves::Family::SnComplexStanding;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Unstable: return "Unstable";
    case Verdict::StableOddSector: return "StableOddSector";
    case Verdict::StableOddSectorComplex: return "StableOddSectorComplex";
    case Verdict::Unclassified: return "Unclassified";
  }
  throw std::invalid_argument("unknown verdict");
}

double momentum_integral_sn(double c, double L) {
  const auto p = waves::solve_family(waves::Family::SnSubluminal, L, c);
  const double K = elliptic::complete_K(p.kappa);
  const double E = elliptic::complete_E(p.kappa);
  return 32.0 / (3.0 * L) * (E + (1.0 - p.beta1 * p.beta1) * K) * K;
}

double charge_integral_complex(double c, double L) {
  const auto p = waves::solve_family(waves::Family::SnComplexStanding, L, c);
  const double K = elliptic::complete_K(p.kappa);
  const double E = elliptic::complete_E(p.kappa);
  return 32.0 / L * (K - E) * K;
}

double d_prime(waves::Family family, double c, double L) {
  double integral = 0.0;
  if (traveling_real(family)) {
    integral = momentum_integral_sn(c, L);
  } else if (standing_complex(family)) {
    integral = charge_integral_complex(c, L);
  } else {
    throw UnsupportedFamilyError(
        "d_prime: no action curve is defined for the superluminal families");
  }
  return c == 0.0 ? 0.0 : -c * integral;
}

double d_second(waves::Family family, double c, double L, double h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument("d_second: step h must be positive and finite");
  if (!traveling_real(family) && !standing_complex(family))
    throw UnsupportedFamilyError(
        "d_second: no action curve is defined for the superluminal families");
  const auto iv = waves::admissible_speeds(family, L);
  const double stencil[] = {c - h, c - 0.5 * h, c, c + 0.5 * h, c + h};
  for (double s : stencil)
    if (!waves::speed_admissible(iv, s))
      throw RegimeError("d_second: stencil [c - h, c + h] leaves the admissible speed interval");
  const auto diff = [&](double step) {
    return (d_prime(family, c + step, L) - d_prime(family, c - step, L)) / (2.0 * step);
  };
  const double coarse = diff(h);
  const double fine = diff(0.5 * h);
  const double scale = std::max(std::abs(coarse), std::abs(fine));
  if (scale > 0.0 && std::abs(coarse - fine) > 1e-4 * scale)
    throw ConvergenceError("d_second: halving the step moved the value by more than 1e-4 relative");
  return coarse;
}

double coercivity_constant(double L) {
  if (!(L > 2.0 * kPi))
    throw RegimeError("coercivity constant requires L > 2*pi (stationary snoidal regime)");
  const auto p = waves::solve_family(waves::Family::SnSubluminal, L, 0.0);
  const double b2 = p.beta2 * p.beta2;
  return 3.0 * b2 / (4.0 + 3.0 * b2);
}

StabilityReport classify(waves::Family family, double c, double L, int N) {
  const auto params = waves::solve_family(family, L, c);
  StabilityReport rep;
  rep.family = family;
  rep.c = c;
  rep.L = L;

  if (!traveling_real(family) && !standing_complex(family)) {
    // Superluminal waves: spectra are computed as data elsewhere, but their
    // quadratic form is unbounded below, so no finite count applies.
    rep.d_prime = std::numeric_limits<double>::quiet_NaN();
    rep.d_second = std::numeric_limits<double>::quiet_NaN();
    rep.n_restricted = -1;
    rep.p_dsecond = 0;
    rep.verdict = Verdict::Unclassified;
    return rep;
  }

  rep.d_prime = d_prime(family, c, L);
  rep.d_second = d_second(family, c, L);
  rep.p_dsecond = rep.d_second > 0.0 ? 1 : 0;

  if (traveling_real(family)) {
    if (c != 0.0) {
      // Negative directions counted on the full phase space; translation
      // symmetry is not removed, mirroring the unstable-case index.
      const auto eig = spectral::eigensolve(spectral::traveling_block_matrix(params, N), 4);
      rep.n_restricted = eig.negative_count;
      rep.verdict = Verdict::Unstable;
    } else {
      const auto M = spectral::build_hill(params, spectral::OperatorLabel::SnReal, N);
      const auto B = spectral::odd_restriction_basis(N);
      const auto eig = spectral::eigensolve(spectral::restricted(M, B), 4);
      rep.n_restricted = eig.negative_count;
      coercivity_constant(L);  // regime sanity: the stationary bound exists
      rep.verdict = Verdict::StableOddSector;
    }
    return rep;
  }

  const auto B2 = spectral::block_diag2(spectral::odd_restriction_basis(N));
  const auto eigR =
      spectral::eigensolve(spectral::restricted(spectral::vector_block_matrix(params, N, false), B2), 4);
  const auto eigI =
      spectral::eigensolve(spectral::restricted(spectral::vector_block_matrix(params, N, true), B2), 4);
  rep.n_restricted = eigR.negative_count + eigI.negative_count;
  rep.verdict = Verdict::StableOddSectorComplex;
  return rep;
}

std::string report_csv_header() { return "family,c,L,d_prime,d_second,n_restricted,verdict"; }

std::string report_csv_row(const StabilityReport& rep) {
  std::string row = waves::family_name(rep.family);
  row += ',';
  row += fmt(rep.c);
  row += ',';
  row += fmt(rep.L);
  row += ',';
  row += fmt(rep.d_prime);
  row += ',';
  row += fmt(rep.d_second);
  row += ',';
  row += std::to_string(rep.n_restricted);
  row += ',';
  row += verdict_name(rep.verdict);
  return row;
}

std::string report_json(const StabilityReport& rep) {
  nlohmann::json j{{"family", waves::family_name(rep.family)},
                   {"c", rep.c},
                   {"L", rep.L},
                   {"d_prime", rep.d_prime},
                   {"d_second", rep.d_second},
                   {"n_restricted", rep.n_restricted},
                   {"p_dsecond", rep.p_dsecond},
                   {"verdict", verdict_name(rep.verdict)}};
  return j.dump(2);
}

}  // namespace phi4::stability
