#include "phi4/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "phi4/errors.hpp"

namespace phi4::evolve {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_state(const FieldState& s) {
  if (s.N < 4 || !fft::is_pow2(static_cast<std::size_t>(s.N)))
    throw std::invalid_argument("field state: N must be a power of two, at least 4");
  if (!(s.L > 0.0)) throw std::invalid_argument("field state: L must be positive");
  if (s.phi1.size() != static_cast<std::size_t>(s.N) ||
      s.phi2.size() != static_cast<std::size_t>(s.N))
    throw std::invalid_argument("field state: sample arrays must have N entries");
}

void zero_imag(fft::cvec& v) {
  for (auto& z : v) z = std::complex<double>(z.real(), 0.0);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// (L/N^2) sum_m w_m |a_m|^2 for unnormalized forward spectra.
double spectral_norm_sq(const fft::cvec& ah, const std::vector<double>& w, double L) {
  const double n = static_cast<double>(ah.size());
  double s = 0.0;
  for (std::size_t m = 0; m < ah.size(); ++m) s += w[m] * std::norm(ah[m]);
  return s * L / (n * n);
}

}  // namespace

double dt_max(int N, double L) {
  if (N <= 0 || !(L > 0.0)) throw std::invalid_argument("dt_max: need N > 0 and L > 0");
  return std::min(0.01, 0.5 * L / N);
}

FieldState wave_state(const waves::WaveParams& params, int N) {
  FieldState s;
  s.t = 0.0;
  s.L = params.L;
  s.N = N;
  s.real_field = params.family != waves::Family::SnComplexStanding;
  s.phi1.resize(N);
  s.phi2.resize(N);
  for (int j = 0; j < N; ++j) {
    const double x = params.L * j / N;
    s.phi1[j] = waves::profile(params, x);
    s.phi2[j] = waves::profile_t(params, x);
  }
  if (s.real_field) {
    zero_imag(s.phi1);
    zero_imag(s.phi2);
  }
  check_state(s);
  return s;
}

double energy(const FieldState& s) {
  check_state(s);
  const fft::cvec phi1x = fft::derivative(s.phi1, s.L);
  double sum = 0.0;
  for (int j = 0; j < s.N; ++j) {
    const double g = 1.0 - std::norm(s.phi1[j]);
    sum += std::norm(s.phi2[j]) + std::norm(phi1x[j]) + 0.5 * g * g;
  }
  return 0.5 * sum * s.L / s.N;
}

double momentum(const FieldState& s) {
  check_state(s);
  if (!s.real_field)
    throw UnsupportedFieldError("momentum is defined for real fields only");
  const fft::cvec phi1x = fft::derivative(s.phi1, s.L);
  double sum = 0.0;
  for (int j = 0; j < s.N; ++j) sum += s.phi2[j].real() * phi1x[j].real();
  return sum * s.L / s.N;
}

double charge(const FieldState& s) {
  check_state(s);
  if (s.real_field) return 0.0;
  double sum = 0.0;
  for (int j = 0; j < s.N; ++j) sum += std::imag(std::conj(s.phi1[j]) * s.phi2[j]);
  return sum * s.L / s.N;
}

Stepper::Stepper(int N, double L, double dt) : N_(N), L_(L), dt_(dt) {
  if (N < 4 || !fft::is_pow2(static_cast<std::size_t>(N)))
    throw std::invalid_argument("stepper: N must be a power of two, at least 4");
  if (!(L > 0.0)) throw std::invalid_argument("stepper: L must be positive");
  if (!std::isfinite(dt) || dt == 0.0 || std::abs(dt) > dt_max(N, L))
    throw std::invalid_argument("stepper: need 0 < |dt| <= dt_max(N, L)");
  const auto xi = fft::wavenumbers(N, L);
  ch_.resize(N);
  sh_.resize(N);
  ssh_.resize(N);
  for (int m = 0; m < N; ++m) {
    const double sq = 1.0 - xi[m] * xi[m];  // d_tt u = sq * u per mode
    if (sq > 1e-14) {
      const double r = std::sqrt(sq);
      ch_[m] = std::cosh(r * dt);
      sh_[m] = std::sinh(r * dt) / r;
    } else if (sq < -1e-14) {
      const double mu = std::sqrt(-sq);
      ch_[m] = std::cos(mu * dt);
      sh_[m] = std::sin(mu * dt) / mu;
    } else {
      ch_[m] = 1.0 + 0.5 * sq * dt * dt;
      sh_[m] = dt * (1.0 + sq * dt * dt / 6.0);
    }
    ssh_[m] = sq * sh_[m];
  }
  u1_.resize(N);
  u2_.resize(N);
}

void Stepper::advance(FieldState& s) {
  check_state(s);
  if (s.N != N_ || s.L != L_)
    throw std::invalid_argument("stepper: state grid does not match construction");
  const double half = 0.5 * dt_;
  for (int j = 0; j < N_; ++j) s.phi2[j] -= half * std::norm(s.phi1[j]) * s.phi1[j];
  u1_ = s.phi1;
  u2_ = s.phi2;
  fft::fft_inplace(u1_);
  fft::fft_inplace(u2_);
  for (int m = 0; m < N_; ++m) {
    const auto a = u1_[m];
    const auto b = u2_[m];
    u1_[m] = ch_[m] * a + sh_[m] * b;
    u2_[m] = ssh_[m] * a + ch_[m] * b;
  }
  fft::ifft_inplace(u1_);
  fft::ifft_inplace(u2_);
  s.phi1 = u1_;
  s.phi2 = u2_;
  if (s.real_field) {
    zero_imag(s.phi1);
    zero_imag(s.phi2);
  }
  for (int j = 0; j < N_; ++j) s.phi2[j] -= half * std::norm(s.phi1[j]) * s.phi1[j];
  s.t += dt_;
}

FieldState step(const FieldState& s, double dt) {
  FieldState out = s;
  Stepper(s.N, s.L, dt).advance(out);
  return out;
}

double orbital_distance(const FieldState& s, const waves::WaveParams& params) {
  check_state(s);
  if (std::abs(params.L - s.L) > 1e-12 * std::max(1.0, s.L))
    throw std::domain_error("orbital distance: wave and state live on different circles");
  const int N = s.N;
  const auto xi = fft::wavenumbers(N, s.L);
  std::vector<double> w1(N);  // H^1 weight on the first component
  for (int m = 0; m < N; ++m) w1[m] = 1.0 + xi[m] * xi[m];

  fft::cvec u1 = s.phi1, u2 = s.phi2;
  fft::fft_inplace(u1);
  fft::fft_inplace(u2);

  const FieldState wave = wave_state(params, N);
  fft::cvec v1 = wave.phi1, v2 = wave.phi2;
  fft::fft_inplace(v1);
  fft::fft_inplace(v2);

  const auto diff_norm = [&](const fft::cvec& a1, const fft::cvec& a2) {
    fft::cvec d1 = a1, d2 = a2;
    fft::fft_inplace(d1);
    fft::fft_inplace(d2);
    double sum = 0.0;
    for (int m = 0; m < N; ++m) sum += w1[m] * std::norm(d1[m]) + std::norm(d2[m]);
    return std::sqrt(sum * s.L / (static_cast<double>(N) * N));
  };

  if (params.family == waves::Family::SnComplexStanding) {
    // the orbit is phase rotations; the minimizing phase is the argument of
    // the weighted inner product
    std::complex<double> inner(0.0, 0.0);
    for (int m = 0; m < N; ++m)
      inner += w1[m] * u1[m] * std::conj(v1[m]) + u2[m] * std::conj(v2[m]);
    const std::complex<double> phase =
        std::abs(inner) > 0.0 ? inner / std::abs(inner) : std::complex<double>(1.0, 0.0);
    fft::cvec d1(N), d2(N);
    for (int j = 0; j < N; ++j) {
      d1[j] = s.phi1[j] - phase * wave.phi1[j];
      d2[j] = s.phi2[j] - phase * wave.phi2[j];
    }
    return diff_norm(d1, d2);
  }

  // real families: coarse translation search by cross-correlation
  fft::cvec corr(N);
  for (int m = 0; m < N; ++m)
    corr[m] = w1[m] * u1[m] * std::conj(v1[m]) + u2[m] * std::conj(v2[m]);
  fft::ifft_inplace(corr);  // corr[r] now (1/N) sum_m G_m e^{i xi_m r L/N}
  int best = 0;
  for (int r = 1; r < N; ++r)
    if (corr[r].real() > corr[best].real()) best = r;

  const double dx = s.L / N;
  const double cm = corr[(best - 1 + N) % N].real();
  const double c0 = corr[best].real();
  const double cp = corr[(best + 1) % N].real();
  const double denom = cm - 2.0 * c0 + cp;
  double rho = best * dx;
  if (std::abs(denom) > 1e-14 * std::max(1.0, std::abs(c0)))
    rho += 0.5 * dx * (cm - cp) / denom;

  // exact resampling of the translated wave at the refined shift
  fft::cvec d1(N), d2(N);
  for (int j = 0; j < N; ++j) {
    const double x = s.L * j / N - rho;
    d1[j] = s.phi1[j] - waves::profile(params, x);
    d2[j] = s.phi2[j] - waves::profile_t(params, x);
  }
  return diff_norm(d1, d2);
}

std::vector<double> perturbation_samples(const Perturbation& pert, int N, double L) {
  if (N < 4 || !fft::is_pow2(static_cast<std::size_t>(N)))
    throw std::invalid_argument("perturbation: N must be a power of two, at least 4");
  if (!(L > 0.0)) throw std::invalid_argument("perturbation: L must be positive");
  if (!(std::isfinite(pert.amplitude)))
    throw std::invalid_argument("perturbation: amplitude must be finite");
  std::vector<double> eps(N, 0.0);
  const double two_pi = 2.0 * std::acos(-1.0);
  switch (pert.parity) {
    case Parity::Odd:
    case Parity::Even: {
      if (pert.mode < 1 || pert.mode >= N / 2)
        throw std::invalid_argument("perturbation: mode must lie in [1, N/2)");
      for (int j = 0; j < N; ++j) {
        const double arg = two_pi * pert.mode * j / N;
        eps[j] = pert.amplitude * (pert.parity == Parity::Odd ? std::sin(arg) : std::cos(arg));
      }
      return eps;
    }
    case Parity::Generic: {
      std::mt19937 gen(pert.seed);
      std::uniform_real_distribution<double> coeff(-1.0, 1.0);
      const int band = 8;
      std::vector<double> a(band), b(band);
      for (int m = 0; m < band; ++m) {
        a[m] = coeff(gen);
        b[m] = coeff(gen);
      }
      double peak = 0.0;
      for (int j = 0; j < N; ++j) {
        double v = 0.0;
        for (int m = 1; m <= band; ++m) {
          const double arg = two_pi * m * j / N;
          v += a[m - 1] * std::sin(arg) + b[m - 1] * std::cos(arg);
        }
        eps[j] = v;
        peak = std::max(peak, std::abs(v));
      }
      if (peak > 0.0)
        for (auto& v : eps) v *= pert.amplitude / peak;
      return eps;
    }
  }
  throw std::invalid_argument("perturbation: unknown parity");
}

double odd_parity_defect(const FieldState& s) {
  check_state(s);
  double worst = 0.0;
  for (int j = 0; j < s.N; ++j) {
    const int k = (s.N - j) % s.N;
    worst = std::max(worst, std::abs(s.phi1[j] + s.phi1[k]));
    worst = std::max(worst, std::abs(s.phi2[j] + s.phi2[k]));
  }
  return worst;
}

OrbitalTrace run_experiment(const waves::WaveParams& params, const EvolveConfig& config) {
  if (!(config.dt > 0.0)) throw std::invalid_argument("experiment: dt must be positive");
  if (!(config.t_end >= 0.0)) throw std::invalid_argument("experiment: t_end must be nonnegative");
  if (config.record_every < 1)
    throw std::invalid_argument("experiment: record_every must be at least 1");

  FieldState state = wave_state(params, config.N);
  if (config.perturbation.amplitude != 0.0) {
    const auto eps = perturbation_samples(config.perturbation, config.N, params.L);
    const auto tgt = config.perturbation.target;
    for (int j = 0; j < config.N; ++j) {
      if (tgt != Target::Phi2) state.phi1[j] += eps[j];
      if (tgt != Target::Phi1) state.phi2[j] += eps[j];
    }
  }

  const double defect0 = odd_parity_defect(state);
  const bool track_parity = defect0 <= 1e-12;

  OrbitalTrace trace;
  trace.max_parity_defect = track_parity ? defect0 : kNaN;
  const auto record = [&]() {
    trace.times.push_back(state.t);
    trace.energy.push_back(energy(state));
    trace.momentum.push_back(state.real_field ? momentum(state) : kNaN);
    trace.charge.push_back(charge(state));
    trace.orbital_distance.push_back(orbital_distance(state, params));
  };

  record();
  const long long n_steps = std::llround(config.t_end / config.dt);
  if (n_steps > 0) {
    Stepper stepper(config.N, params.L, config.dt);
    for (long long k = 1; k <= n_steps; ++k) {
      stepper.advance(state);
      if (track_parity)
        trace.max_parity_defect = std::max(trace.max_parity_defect, odd_parity_defect(state));
      if (k % config.record_every == 0 || k == n_steps) record();
    }
  }
  return trace;
}

std::string trace_csv(const OrbitalTrace& trace) {
  std::string out = "t,energy,momentum,charge,orbital_distance\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    out += fmt(trace.times[i]);
    out += ',';
    out += fmt(trace.energy[i]);
    out += ',';
    out += fmt(trace.momentum[i]);
    out += ',';
    out += fmt(trace.charge[i]);
    out += ',';
    out += fmt(trace.orbital_distance[i]);
    out += '\n';
  }
  return out;
}

}  // namespace phi4::evolve
