#pragma once
// Orbital stability indices for the periodic waves: the action derivative
// d'(c) from closed-form elliptic integrals, finite-difference d''(c), the
// coercivity constant of the stationary snoidal wave, and a classification
// combining the index signs with discrete negative-eigenvalue counts.

#include <string>

#include "phi4/wave_families.hpp"

namespace phi4::stability {

enum class Verdict { Unstable, StableOddSector, StableOddSectorComplex, Unclassified };

std::string verdict_name(Verdict v);

struct StabilityReport {
  waves::Family family = waves::Family::SnSubluminal;
  double c = 0.0;
  double L = 0.0;
  double d_prime = 0.0;
  double d_second = 0.0;  // finite-difference value, NaN when no action curve exists
  int n_restricted = 0;   // negative count on the relevant subspace; -1 when undefined
  int p_dsecond = 0;      // 1 iff d_second > 0
  Verdict verdict = Verdict::Unclassified;
};

// Closed form of int_0^L (d/dx profile)^2 dx for the subluminal snoidal wave.
double momentum_integral_sn(double c, double L);

// Closed form of int_0^L |profile|^2 dx for the standing complex wave.
double charge_integral_complex(double c, double L);

// d'(c) = -c * (the family's integral above); defined only for the two
// subluminal/standing families.
double d_prime(waves::Family family, double c, double L);

// Central difference of d_prime with internal step-halving consistency check.
double d_second(waves::Family family, double c, double L, double h = 1e-4);

// Squared coercivity constant 3 beta2^2 / (4 + 3 beta2^2) of the stationary
// snoidal wave; lies in (0, 3/7).
double coercivity_constant(double L);

StabilityReport classify(waves::Family family, double c, double L, int N = 256);

std::string report_csv_header();
std::string report_csv_row(const StabilityReport& rep);
std::string report_json(const StabilityReport& rep);

}  // namespace phi4::stability
