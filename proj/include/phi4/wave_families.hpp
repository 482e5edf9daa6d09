#pragma once

#include <complex>
#include <string>

namespace phi4::waves {

// Periodic traveling / standing wave families of u_tt - u_xx = u - |u|^2 u
// on a torus of circumference L:
//   dn:            u = beta1 dn(ell (x - c t); kappa),           |c| > 1
//   cn:            u = beta2 cn(ell (x - c t); kappa),           |c| > 1
//   sn-subluminal: u = beta2 sn(ell (x - c t); kappa),           |c| < 1
//   sn-complex:    u = beta2 e^{i c t} sn(ell x; kappa),  standing envelope
enum class Family { DnSuperluminal, CnSuperluminal, SnSubluminal, SnComplexStanding };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// Admissible wave speeds at fixed circumference L.  The interval is open;
// c = 0 is admissible for the sn families exactly when L > 2*pi.
struct SpeedInterval {
  Family family;
  double L;
  double lo;
  double hi;  // +inf for cn and sn-complex
};

SpeedInterval admissible_speeds(Family f, double L);
bool speed_admissible(const SpeedInterval& iv, double c);

struct WaveParams {
  Family family;
  double c;       // wave / phase speed
  double L;       // torus circumference = fundamental period
  double beta1;   // amplitude parameter (larger root)
  double beta2;   // amplitude parameter (smaller root for real families)
  double kappa;   // elliptic modulus
  double ell;     // spatial scale
  double omega;   // |c^2 - 1| for traveling waves, 1 + c^2 for standing
  double A;       // integration constant of the quadrature form
};

// Fundamental period of the family profile at amplitude parameter `beta`
// (beta1 for dn and the sn families, beta2 for cn).
double period_of(Family f, double beta, double c);

// Match the fundamental period to L by bisection in the amplitude parameter.
WaveParams solve_family(Family f, double L, double c);

// Solution value and its space / time derivatives.
std::complex<double> profile(const WaveParams& p, double x, double t = 0.0);
std::complex<double> profile_x(const WaveParams& p, double x, double t = 0.0);
std::complex<double> profile_t(const WaveParams& p, double x, double t = 0.0);

// Max-norm residual of the profile ODE over n equispaced samples, second
// derivative taken from the exact Jacobi identities.
double ode_residual(const WaveParams& p, int n_samples = 256);

// Max-norm residual of the first-order quadrature form (phi')^2 = +-F(phi)/(2 omega).
double quadrature_residual(const WaveParams& p, int n_samples = 256);

// Quartic F evaluated at z for these params (the right-hand side of the
// quadrature form before the 1/(2 omega) scaling).
double quartic_F(const WaveParams& p, double z);

std::string to_json_string(const WaveParams& p);
WaveParams waveparams_from_json(const std::string& text);

}  // namespace phi4::waves
