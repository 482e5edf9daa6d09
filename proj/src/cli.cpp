#include "phi4/cli.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "phi4/acceptance.hpp"
#include "phi4/errors.hpp"
#include "phi4/evolve.hpp"
#include "phi4/spectral.hpp"
#include "phi4/stability.hpp"
#include "phi4/wave_families.hpp"

namespace phi4::cli {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Decimal or multiple-of-pi literal: "0.5", "4pi", "-pi", "1.5pi".
double parse_real(const std::string& raw) {
  std::string s = raw;
  s.erase(0, s.find_first_not_of(" \t"));
  const auto last = s.find_last_not_of(" \t");
  s.erase(last == std::string::npos ? 0 : last + 1);
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = kPi;
    s.erase(s.size() - 2);
    if (s.empty() || s == "+") return kPi;
    if (s == "-") return -kPi;
  }
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("cannot parse number: '" + raw + "'");
  return v * factor;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    parts.push_back(s.substr(start, at - start));
    if (at == std::string::npos) return parts;
    start = at + 1;
  }
}

std::vector<double> parse_c_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3)
    throw std::invalid_argument("--c-grid expects lo:hi:n, got '" + s + "'");
  const double lo = parse_real(parts[0]);
  const double hi = parse_real(parts[1]);
  std::size_t pos = 0;
  const int n = std::stoi(parts[2], &pos);
  if (pos != parts[2].size() || n < 1)
    throw std::invalid_argument("--c-grid needs at least one point");
  if (n > 1 && !(hi > lo))
    throw std::invalid_argument("--c-grid needs hi > lo for more than one point");
  std::vector<double> cs(n);
  for (int i = 0; i < n; ++i) cs[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return cs;
}

evolve::Perturbation parse_perturb(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3 && parts.size() != 4)
    throw std::invalid_argument("--perturb expects parity:mode:amplitude[:target]");
  evolve::Perturbation p;
  if (parts[0] == "odd")
    p.parity = evolve::Parity::Odd;
  else if (parts[0] == "even")
    p.parity = evolve::Parity::Even;
  else if (parts[0] == "generic")
    p.parity = evolve::Parity::Generic;
  else
    throw std::invalid_argument("perturbation parity must be odd, even or generic");
  std::size_t pos = 0;
  p.mode = std::stoi(parts[1], &pos);
  if (pos != parts[1].size()) throw std::invalid_argument("bad perturbation mode");
  p.amplitude = parse_real(parts[2]);
  p.target = evolve::Target::Both;
  if (parts.size() == 4) {
    if (parts[3] == "phi1")
      p.target = evolve::Target::Phi1;
    else if (parts[3] == "phi2")
      p.target = evolve::Target::Phi2;
    else if (parts[3] != "both")
      throw std::invalid_argument("perturbation target must be phi1, phi2 or both");
  }
  return p;
}

struct FamiliesOpts {
  std::string family, L, c, out;
  int samples = 0;
};

struct SpectrumOpts {
  std::string family, L, c, flat;
  int N = 256;
  int modes = 8;
};

struct StabilityOpts {
  std::string family, L, c_grid, out;
  int N = 256;
};

struct EvolveOpts {
  std::string family, L, c, dt, t_end, perturb, out;
  int N = 256;
  int record_every = 10;
  unsigned seed = 12345;
};

int do_families(const FamiliesOpts& o) {
  const auto f = waves::family_from_name(o.family);
  const auto p = waves::solve_family(f, parse_real(o.L), parse_real(o.c));
  std::cout << waves::to_json_string(p) << "\n";
  if (o.samples > 0) {
    if (o.samples < 2) throw std::invalid_argument("--samples must be at least 2");
    if (o.out.empty()) throw std::invalid_argument("--samples needs --out for the CSV");
    std::ofstream ofs(o.out);
    if (!ofs) throw std::invalid_argument("cannot open '" + o.out + "' for writing");
    ofs << "x,re,im\n";
    for (int j = 0; j < o.samples; ++j) {
      const double x = p.L * j / o.samples;
      const auto v = waves::profile(p, x);
      ofs << fmt(x) << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << '\n';
    }
  }
  return 0;
}

int do_spectrum(const SpectrumOpts& o) {
  if (!o.flat.empty()) {
    // debug echo: constant potential against the analytic Fourier spectrum
    const double v0 = parse_real(o.flat);
    const double L = parse_real(o.L);
    spectral::HillSpec spec;
    spec.a = 1.0;
    spec.shift = 0.0;
    spec.potential.assign(o.N, v0);
    spec.L = L;
    const auto rep = spectral::eigensolve(spectral::hill_matrix(spec), o.modes);
    std::vector<double> analytic;
    for (double xi : fft::wavenumbers(o.N, L)) analytic.push_back(xi * xi + v0);
    std::sort(analytic.begin(), analytic.end());
    analytic.resize(o.modes);
    double worst = 0.0;
    for (int i = 0; i < o.modes; ++i)
      worst = std::max(worst, std::abs(rep.eigenvalues[i] - analytic[i]));
    nlohmann::json j{{"flat_v0", v0},
                     {"N", o.N},
                     {"eigenvalues", rep.eigenvalues},
                     {"analytic", analytic},
                     {"max_error", worst}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  const auto f = waves::family_from_name(o.family);
  const auto p = waves::solve_family(f, parse_real(o.L), parse_real(o.c));

  // re-solve with the requested mode count, keeping the verification results
  const auto sized = [&](spectral::OperatorLabel label, spectral::SpectrumReport verified) {
    if (static_cast<int>(verified.eigenvalues.size()) == o.modes) return verified;
    auto rep = spectral::eigensolve(spectral::build_hill(p, label, o.N), o.modes);
    rep.label = label;
    rep.oracle_errors = std::move(verified.oracle_errors);
    return rep;
  };

  switch (f) {
    case waves::Family::SnSubluminal: {
      const auto rep = sized(spectral::OperatorLabel::SnReal,
                             spectral::verify_sn_real_spectrum(p, o.N));
      std::cout << spectral::spectrum_report_json(rep) << "\n";
      return 0;
    }
    case waves::Family::SnComplexStanding: {
      auto pair = spectral::verify_complex_spectra(p, o.N);
      const auto repR = sized(spectral::OperatorLabel::SnComplexReal, std::move(pair.first));
      const auto repI = sized(spectral::OperatorLabel::SnComplexImag, std::move(pair.second));
      nlohmann::json j;
      j[spectral::label_name(repR.label)] =
          nlohmann::json::parse(spectral::spectrum_report_json(repR));
      j[spectral::label_name(repI.label)] =
          nlohmann::json::parse(spectral::spectrum_report_json(repI));
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    case waves::Family::DnSuperluminal:
    case waves::Family::CnSuperluminal: {
      // data only: the quadratic form is unbounded below, nothing is verified
      const auto label = f == waves::Family::DnSuperluminal ? spectral::OperatorLabel::DnData
                                                            : spectral::OperatorLabel::CnData;
      auto rep = spectral::eigensolve(spectral::build_hill(p, label, o.N), o.modes);
      rep.label = label;
      std::cout << spectral::spectrum_report_json(rep) << "\n";
      return 0;
    }
  }
  throw std::invalid_argument("unknown family");
}

int do_stability(const StabilityOpts& o) {
  const auto f = waves::family_from_name(o.family);
  const double L = parse_real(o.L);
  const auto cs = parse_c_grid(o.c_grid);
  std::string csv = stability::report_csv_header() + "\n";
  int successes = 0;
  for (double c : cs) {
    try {
      csv += stability::report_csv_row(stability::classify(f, c, L, o.N)) + "\n";
      ++successes;
    } catch (const RegimeError&) {
      csv += waves::family_name(f) + "," + fmt(c) + "," + fmt(L) + ",nan,nan,-1,RegimeError\n";
    }
  }
  std::cout << csv;
  if (!o.out.empty()) {
    std::ofstream ofs(o.out);
    if (!ofs) throw std::invalid_argument("cannot open '" + o.out + "' for writing");
    ofs << csv;
  }
  if (successes == 0) {
    std::cerr << "regime error: no admissible grid point\n";
    return 2;
  }
  return 0;
}

int do_evolve(const EvolveOpts& o) {
  const auto f = waves::family_from_name(o.family);
  const auto p = waves::solve_family(f, parse_real(o.L), parse_real(o.c));
  evolve::EvolveConfig cfg;
  cfg.dt = parse_real(o.dt);
  cfg.t_end = parse_real(o.t_end);
  cfg.record_every = o.record_every;
  cfg.N = o.N;
  if (!o.perturb.empty()) {
    cfg.perturbation = parse_perturb(o.perturb);
    cfg.perturbation.seed = o.seed;
  }
  const auto trace = evolve::run_experiment(p, cfg);
  std::ofstream ofs(o.out);
  if (!ofs) throw std::invalid_argument("cannot open '" + o.out + "' for writing");
  ofs << evolve::trace_csv(trace);
  std::cout << "wrote " << trace.times.size() << " records to " << o.out << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"periodic waves of the cubic field equation on a circle"};
  app.require_subcommand(1);

  FamiliesOpts fo;
  auto* families = app.add_subcommand("families", "solve a wave family and print its parameters");
  families->add_option("--family", fo.family, "dn | cn | sn-subluminal | sn-complex")->required();
  families->add_option("--L", fo.L, "circumference (accepts pi literals, e.g. 4pi)")->required();
  families->add_option("--c", fo.c, "wave speed")->required();
  families->add_option("--samples", fo.samples, "also write a profile CSV with this many rows");
  families->add_option("--out", fo.out, "profile CSV path");

  SpectrumOpts so;
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the linearized operators");
  spectrum->add_option("--family", so.family, "dn | cn | sn-subluminal | sn-complex");
  spectrum->add_option("--L", so.L, "circumference")->required();
  spectrum->add_option("--c", so.c, "wave speed");
  spectrum->add_option("--N", so.N, "grid size (power of two)");
  spectrum->add_option("--modes", so.modes, "eigenvalues to report");
  spectrum->add_option("--flat", so.flat, "debug: constant potential value, echo vs analytic");

  StabilityOpts to;
  auto* stab = app.add_subcommand("stability", "classification sweep over wave speeds");
  stab->add_option("--family", to.family, "dn | cn | sn-subluminal | sn-complex")->required();
  stab->add_option("--L", to.L, "circumference")->required();
  stab->add_option("--c-grid", to.c_grid, "lo:hi:n speed grid")->required();
  stab->add_option("--N", to.N, "grid size for the eigenvalue counts");
  stab->add_option("--out", to.out, "also write the CSV here");

  EvolveOpts eo;
  auto* evo = app.add_subcommand("evolve", "run a perturbed-wave experiment");
  evo->add_option("--family", eo.family, "dn | cn | sn-subluminal | sn-complex")->required();
  evo->add_option("--L", eo.L, "circumference")->required();
  evo->add_option("--c", eo.c, "wave speed")->required();
  evo->add_option("--dt", eo.dt, "time step")->required();
  evo->add_option("--t-end", eo.t_end, "final time")->required();
  evo->add_option("--perturb", eo.perturb, "parity:mode:amplitude[:target]");
  evo->add_option("--out", eo.out, "trace CSV path")->required();
  evo->add_option("--N", eo.N, "grid size (power of two)");
  evo->add_option("--record-every", eo.record_every, "steps between records");
  evo->add_option("--seed", eo.seed, "seed for generic perturbations");

  bool quick = false;
  auto* verify = app.add_subcommand("verify-all", "run the full acceptance suite");
  verify->add_flag("--quick", quick, "skip the long evolution rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (families->parsed()) return do_families(fo);
    if (spectrum->parsed()) return do_spectrum(so);
    if (stab->parsed()) return do_stability(to);
    if (evo->parsed()) return do_evolve(eo);
    const auto rows = acceptance::run_all(quick, &std::cout);
    if (acceptance::all_passed(rows)) return 0;
    std::cerr << "acceptance suite failed\n";
    return 4;
  } catch (const spectral::VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    std::cout << spectral::spectrum_report_json(e.report) << "\n";
    return 3;
  } catch (const RegimeError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedFamilyError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const UnsupportedFieldError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace phi4::cli
