#include "phi4/wave_families.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "phi4/elliptic.hpp"
#include "phi4/errors.hpp"

namespace phi4::waves {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2 = std::numbers::sqrt2;

// Interval of the amplitude parameter that the period map is defined on.
struct AmplitudeInterval {
  double lo, hi;  // open; hi may be +inf
};

AmplitudeInterval amplitude_interval(Family f, double c) {
  const double c2 = c * c;
  switch (f) {
    case Family::DnSuperluminal:
    case Family::SnSubluminal:
      return {1.0, kSqrt2};
    case Family::CnSuperluminal:
      return {kSqrt2, kInf};
    case Family::SnComplexStanding:
      return {std::sqrt(1.0 + c2), std::sqrt(2.0 * (1.0 + c2))};
  }
  throw std::logic_error("amplitude_interval: bad family");
}

void require_speed_regime(Family f, double c) {
  const double a = std::abs(c);
  switch (f) {
    case Family::DnSuperluminal:
    case Family::CnSuperluminal:
      if (!(a > 1.0)) throw RegimeError(family_name(f) + ": requires |c| > 1");
      return;
    case Family::SnSubluminal:
      if (!(a < 1.0)) throw RegimeError(family_name(f) + ": requires |c| < 1");
      return;
    case Family::SnComplexStanding:
      return;  // any real c
  }
}

WaveParams make_params(Family f, double beta, double c) {
  WaveParams p{};
  p.family = f;
  p.c = c;
  const double c2 = c * c;
  switch (f) {
    case Family::DnSuperluminal: {
      p.omega = c2 - 1.0;
      p.beta1 = beta;
      p.beta2 = std::sqrt(2.0 - beta * beta);
      p.kappa = std::sqrt(2.0 * (beta * beta - 1.0)) / beta;
      p.ell = beta / std::sqrt(2.0 * p.omega);
      p.A = -0.25 * p.beta1 * p.beta1 * p.beta2 * p.beta2;
      break;
    }
    case Family::CnSuperluminal: {
      p.omega = c2 - 1.0;
      p.beta2 = beta;
      p.beta1 = std::sqrt(beta * beta - 2.0);
      p.kappa = beta / std::sqrt(2.0 * (beta * beta - 1.0));
      p.ell = std::sqrt((beta * beta - 1.0) / p.omega);
      p.A = 0.25 * p.beta1 * p.beta1 * p.beta2 * p.beta2;
      break;
    }
    case Family::SnSubluminal: {
      p.omega = 1.0 - c2;
      p.beta1 = beta;
      p.beta2 = std::sqrt(2.0 - beta * beta);
      p.kappa = p.beta2 / p.beta1;
      p.ell = beta / std::sqrt(2.0 * p.omega);
      p.A = -0.25 * p.beta1 * p.beta1 * p.beta2 * p.beta2;
      break;
    }
    case Family::SnComplexStanding: {
      p.omega = 1.0 + c2;
      p.beta1 = beta;
      p.beta2 = std::sqrt(2.0 * p.omega - beta * beta);
      p.kappa = p.beta2 / p.beta1;
      p.ell = beta / kSqrt2;
      p.A = 0.25 * p.beta1 * p.beta1 * p.beta2 * p.beta2;
      break;
    }
  }
  return p;
}

double period_from_params(const WaveParams& p) {
  const double K = elliptic::complete_K(p.kappa);
  // dn has fundamental period 2K, cn and sn have 4K, in the scaled variable.
  const double quarters = (p.family == Family::DnSuperluminal) ? 2.0 : 4.0;
  return quarters * K / p.ell;
}

// Each family sweeps a modulus range (kappa_min(f), 1) as the amplitude
// parameter runs over its interval; the period diverges at kappa -> 1.
double kappa_min(Family f) {
  return f == Family::CnSuperluminal ? std::sqrt(0.5) : 0.0;
}

double beta_from_kappa(Family f, double kappa, double c) {
  const double k2 = kappa * kappa;
  switch (f) {
    case Family::DnSuperluminal: return std::sqrt(2.0 / (2.0 - k2));
    case Family::CnSuperluminal: return std::sqrt(2.0 * k2 / (2.0 * k2 - 1.0));
    case Family::SnSubluminal: return std::sqrt(2.0 / (1.0 + k2));
    case Family::SnComplexStanding:
      return std::sqrt(2.0 * (1.0 + c * c) / (1.0 + k2));
  }
  throw std::logic_error("beta_from_kappa: bad family");
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::DnSuperluminal: return "dn";
    case Family::CnSuperluminal: return "cn";
    case Family::SnSubluminal: return "sn-subluminal";
    case Family::SnComplexStanding: return "sn-complex";
  }
  throw std::logic_error("family_name: bad family");
}

Family family_from_name(const std::string& name) {
  if (name == "dn") return Family::DnSuperluminal;
  if (name == "cn") return Family::CnSuperluminal;
  if (name == "sn-subluminal") return Family::SnSubluminal;
  if (name == "sn-complex") return Family::SnComplexStanding;
  throw std::invalid_argument("unknown family '" + name +
                              "' (expected dn, cn, sn-subluminal, sn-complex)");
}

SpeedInterval admissible_speeds(Family f, double L) {
  if (!(L > 0.0)) throw std::invalid_argument("admissible_speeds: L must be positive");
  SpeedInterval iv{f, L, 0.0, kInf};
  switch (f) {
    case Family::DnSuperluminal:
      iv.lo = 1.0;
      iv.hi = std::sqrt(1.0 + L * L / (2.0 * kPi * kPi));
      break;
    case Family::CnSuperluminal:
      iv.lo = 1.0;
      iv.hi = kInf;
      break;
    case Family::SnSubluminal:
      iv.lo = std::sqrt(std::max(0.0, 1.0 - L * L / (4.0 * kPi * kPi)));
      iv.hi = 1.0;
      break;
    case Family::SnComplexStanding:
      iv.lo = std::sqrt(std::max(0.0, 4.0 * kPi * kPi / (L * L) - 1.0));
      iv.hi = kInf;
      break;
  }
  return iv;
}

bool speed_admissible(const SpeedInterval& iv, double c) {
  const double a = std::abs(c);
  const double L = iv.L;
  // Equivalent to: the open period range of the family at speed c contains L.
  switch (iv.family) {
    case Family::DnSuperluminal:
      return a > 1.0 && L > kPi * std::sqrt(2.0 * (a * a - 1.0));
    case Family::CnSuperluminal:
      return a > 1.0;
    case Family::SnSubluminal:
      return a < 1.0 && L > 2.0 * kPi * std::sqrt(1.0 - a * a);
    case Family::SnComplexStanding:
      return L > 2.0 * kPi / std::sqrt(1.0 + a * a);
  }
  return false;
}

double period_of(Family f, double beta, double c) {
  require_speed_regime(f, c);
  const auto iv = amplitude_interval(f, c);
  if (!(beta > iv.lo) || !(beta < iv.hi))
    throw std::domain_error("period_of: amplitude parameter outside the open interval");
  return period_from_params(make_params(f, beta, c));
}

WaveParams solve_family(Family f, double L, double c) {
  if (!(L > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("solve_family: need L > 0 and finite c");
  require_speed_regime(f, c);
  const auto iv = admissible_speeds(f, L);
  if (!speed_admissible(iv, c)) {
    std::ostringstream os;
    os << "speed |c| = " << std::abs(c) << " not admissible for " << family_name(f)
       << " at L = " << L << ": admissible |c| in (" << iv.lo << ", ";
    if (std::isinf(iv.hi)) os << "inf";
    else os << iv.hi;
    os << ")";
    if ((f == Family::SnSubluminal || f == Family::SnComplexStanding) && c == 0.0)
      os << "; c = 0 requires L > 2*pi";
    throw RegimeError(os.str());
  }

  // Bisect in t = log(1 - kappa^2).  Near kappa = 1 the complete integral grows
  // like -t/2, so the period is asymptotically linear in t; bisecting the
  // amplitude parameter directly cannot resolve roots that sit exponentially
  // close to its endpoint (L a few times the minimal period already does this).
  const double kmin = kappa_min(f);
  const double t_top = std::log1p(-kmin * kmin);  // kappa = kappa_min end
  constexpr double kTMin = -30.0;  // kappa'^2 = e^t; smaller is degenerate

  auto params_at = [&](double t) {
    const double kappa = std::sqrt(-std::expm1(t));
    WaveParams q = make_params(f, beta_from_kappa(f, kappa, c), c);
    // make_params recovers the modulus from the amplitude, which wipes out the
    // complementary part 1 - kappa^2 when kappa is close to 1; keep the exact one.
    q.kappa = kappa;
    return q;
  };
  auto period_at = [&](double t) { return period_from_params(params_at(t)); };

  double t_hi = t_top - 1e-9;  // short-period end
  int guard = 0;
  while (period_at(t_hi) >= L) {
    t_hi = t_top - 0.5 * (t_top - t_hi);
    if (++guard > 200)
      throw ConvergenceError("solve_family: no bracket near the minimal period");
  }
  double t_lo = t_top - 1.0;  // long-period end
  guard = 0;
  while (period_at(t_lo) <= L) {
    if (t_lo <= kTMin)
      throw ConvergenceError("solve_family: modulus degenerate (kappa too close to 1)");
    t_lo = std::max(kTMin, t_top - 2.0 * (t_top - t_lo));
    if (++guard > 200) throw ConvergenceError("solve_family: no long-period bracket");
  }

  for (int it = 0; it < 200; ++it) {
    if (t_hi - t_lo <= 1e-13 * std::max(1.0, -t_lo)) break;
    const double mid = 0.5 * (t_lo + t_hi);
    if (mid == t_lo || mid == t_hi) break;
    if (period_at(mid) > L) t_lo = mid;
    else t_hi = mid;
  }

  WaveParams p = params_at(0.5 * (t_lo + t_hi));
  if (p.kappa > 1.0 - 1e-10)
    throw ConvergenceError("solve_family: modulus degenerate (kappa too close to 1)");
  p.L = L;
  const double T = period_from_params(p);
  if (!(std::abs(T - L) <= 1e-10 * L))
    throw ConvergenceError("solve_family: period residual above tolerance");
  return p;
}

std::complex<double> profile(const WaveParams& p, double x, double t) {
  using std::complex;
  if (p.family == Family::SnComplexStanding) {
    const auto j = elliptic::jacobi_sncndn(p.ell * x, p.kappa);
    return std::polar(1.0, p.c * t) * (p.beta2 * j.sn);
  }
  const double y = p.ell * (x - p.c * t);
  const auto j = elliptic::jacobi_sncndn(y, p.kappa);
  switch (p.family) {
    case Family::DnSuperluminal: return complex<double>(p.beta1 * j.dn, 0.0);
    case Family::CnSuperluminal: return complex<double>(p.beta2 * j.cn, 0.0);
    default: return complex<double>(p.beta2 * j.sn, 0.0);
  }
}

std::complex<double> profile_x(const WaveParams& p, double x, double t) {
  using std::complex;
  if (p.family == Family::SnComplexStanding) {
    const auto j = elliptic::jacobi_sncndn(p.ell * x, p.kappa);
    return std::polar(1.0, p.c * t) * (p.beta2 * p.ell * j.cn * j.dn);
  }
  const double y = p.ell * (x - p.c * t);
  const auto j = elliptic::jacobi_sncndn(y, p.kappa);
  switch (p.family) {
    case Family::DnSuperluminal:
      return complex<double>(-p.beta1 * p.ell * p.kappa * p.kappa * j.sn * j.cn, 0.0);
    case Family::CnSuperluminal:
      return complex<double>(-p.beta2 * p.ell * j.sn * j.dn, 0.0);
    default:
      return complex<double>(p.beta2 * p.ell * j.cn * j.dn, 0.0);
  }
}

std::complex<double> profile_t(const WaveParams& p, double x, double t) {
  if (p.family == Family::SnComplexStanding)
    return std::complex<double>(0.0, p.c) * profile(p, x, t);
  return -p.c * profile_x(p, x, t);
}

double quartic_F(const WaveParams& p, double z) {
  const double z2 = z * z;
  if (p.family == Family::SnComplexStanding)
    return z2 * z2 - 2.0 * p.omega * z2 + 4.0 * p.A;
  return z2 * z2 - 2.0 * z2 - 4.0 * p.A;
}

double ode_residual(const WaveParams& p, int n_samples) {
  if (n_samples < 8) throw std::invalid_argument("ode_residual: too few samples");
  const double k2 = p.kappa * p.kappa;
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double x = p.L * i / n_samples;
    const auto j = elliptic::jacobi_sncndn(p.ell * x, p.kappa);
    const double l2 = p.ell * p.ell;
    double r = 0.0;
    switch (p.family) {
      case Family::DnSuperluminal: {
        const double phi = p.beta1 * j.dn;
        const double phixx =
            p.beta1 * l2 * ((2.0 - k2) * j.dn - 2.0 * j.dn * j.dn * j.dn);
        r = p.omega * phixx - phi + phi * phi * phi;
        break;
      }
      case Family::CnSuperluminal: {
        const double phi = p.beta2 * j.cn;
        const double phixx =
            p.beta2 * l2 * ((2.0 * k2 - 1.0) * j.cn - 2.0 * k2 * j.cn * j.cn * j.cn);
        r = p.omega * phixx - phi + phi * phi * phi;
        break;
      }
      case Family::SnSubluminal: {
        const double phi = p.beta2 * j.sn;
        const double phixx =
            p.beta2 * l2 * (2.0 * k2 * j.sn * j.sn * j.sn - (1.0 + k2) * j.sn);
        r = p.omega * phixx + phi - phi * phi * phi;
        break;
      }
      case Family::SnComplexStanding: {
        const double psi = p.beta2 * j.sn;
        const double psixx =
            p.beta2 * l2 * (2.0 * k2 * j.sn * j.sn * j.sn - (1.0 + k2) * j.sn);
        r = psixx + p.omega * psi - psi * psi * psi;
        break;
      }
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

double quadrature_residual(const WaveParams& p, int n_samples) {
  if (n_samples < 8) throw std::invalid_argument("quadrature_residual: too few samples");
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double x = p.L * i / n_samples;
    const double phi = profile(p, x, 0.0).real();
    const double phix = profile_x(p, x, 0.0).real();
    double rhs = 0.0;
    switch (p.family) {
      case Family::DnSuperluminal:
      case Family::CnSuperluminal:
        rhs = -quartic_F(p, phi) / (2.0 * p.omega);
        break;
      case Family::SnSubluminal:
        rhs = quartic_F(p, phi) / (2.0 * p.omega);
        break;
      case Family::SnComplexStanding:
        rhs = 0.5 * quartic_F(p, phi);
        break;
    }
    worst = std::max(worst, std::abs(phix * phix - rhs));
  }
  return worst;
}

std::string to_json_string(const WaveParams& p) {
  nlohmann::json j;
  j["family"] = family_name(p.family);
  j["c"] = p.c;
  j["L"] = p.L;
  j["beta1"] = p.beta1;
  j["beta2"] = p.beta2;
  j["kappa"] = p.kappa;
  j["ell"] = p.ell;
  j["omega"] = p.omega;
  j["A"] = p.A;
  return j.dump(2);
}

WaveParams waveparams_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  WaveParams p{};
  p.family = family_from_name(j.at("family").get<std::string>());
  p.c = j.at("c").get<double>();
  p.L = j.at("L").get<double>();
  p.beta1 = j.at("beta1").get<double>();
  p.beta2 = j.at("beta2").get<double>();
  p.kappa = j.at("kappa").get<double>();
  p.ell = j.at("ell").get<double>();
  p.omega = j.at("omega").get<double>();
  p.A = j.at("A").get<double>();
  return p;
}

}  // namespace phi4::waves
