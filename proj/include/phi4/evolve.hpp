#pragma once
// Strang-split pseudospectral integrator for the torus field equation
// d_t phi1 = phi2, d_t phi2 = phi1_xx + phi1 - |phi1|^2 phi1, with conserved
// quantity monitors and orbital-distance experiments against the wave orbits.

#include <limits>
#include <string>
#include <vector>

#include "phi4/fft.hpp"
#include "phi4/wave_families.hpp"

namespace phi4::evolve {

struct FieldState {
  double t = 0.0;
  double L = 0.0;
  int N = 0;
  fft::cvec phi1;
  fft::cvec phi2;
  bool real_field = true;  // when set, imaginary parts are kept identically zero
};

// Accuracy (not stability) cap on the step size.
double dt_max(int N, double L);

// Exact wave samples (profile, its time derivative) at t = 0.
FieldState wave_state(const waves::WaveParams& params, int N);

double energy(const FieldState& s);
double momentum(const FieldState& s);  // real fields only
double charge(const FieldState& s);    // exactly 0 for real fields

// One Strang step: half nonlinear kick, exact linear propagation per Fourier
// mode, half kick. Negative dt runs the flow backward.
class Stepper {
 public:
  Stepper(int N, double L, double dt);
  void advance(FieldState& s);
  double dt() const { return dt_; }

 private:
  int N_;
  double L_;
  double dt_;
  std::vector<double> ch_, sh_, ssh_;  // per-mode propagator entries
  fft::cvec u1_, u2_;                  // scratch spectra
};

FieldState step(const FieldState& s, double dt);

// Distance from the state to the wave's orbit: minimized over grid
// translations with parabolic refinement (real families) or over the global
// phase, found in closed form (standing complex family). H^1 x L^2 norm,
// spectral derivative.
double orbital_distance(const FieldState& s, const waves::WaveParams& params);

enum class Parity { Odd, Even, Generic };
enum class Target { Phi1, Phi2, Both };

struct Perturbation {
  int mode = 1;            // Fourier mode for odd/even; band limit is fixed for generic
  double amplitude = 0.0;  // max-norm of the injected samples
  Parity parity = Parity::Odd;
  Target target = Target::Phi1;
  unsigned seed = 12345;   // generic parity only
};

std::vector<double> perturbation_samples(const Perturbation& pert, int N, double L);

struct EvolveConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  int record_every = 10;
  int N = 256;
  Perturbation perturbation;
};

struct OrbitalTrace {
  std::vector<double> times;
  std::vector<double> energy;
  std::vector<double> momentum;  // NaN entries for complex fields
  std::vector<double> charge;
  std::vector<double> orbital_distance;
  // Largest odd-parity defect seen along the run; NaN when the initial data
  // was not odd to 1e-12.
  double max_parity_defect = std::numeric_limits<double>::quiet_NaN();
};

// Max-norm of phi(x) + phi(-x) over the grid and both components.
double odd_parity_defect(const FieldState& s);

OrbitalTrace run_experiment(const waves::WaveParams& params, const EvolveConfig& config);

std::string trace_csv(const OrbitalTrace& trace);

}  // namespace phi4::evolve
