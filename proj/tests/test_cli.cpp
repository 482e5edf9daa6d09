#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "phi4/cli.hpp"

namespace {

int run(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
  std::vector<const char*> argv{"phi4waves"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream cap_out, cap_err;
  auto* old_out = std::cout.rdbuf(cap_out.rdbuf());
  auto* old_err = std::cerr.rdbuf(cap_err.rdbuf());
  const int code = phi4::cli::run_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  if (out) *out = cap_out.str();
  if (err) *err = cap_err.str();
  return code;
}

std::string slurp(const std::string& path) {
  std::ifstream ifs(path);
  std::ostringstream ss;
  ss << ifs.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("families subcommand") {
  std::string out;
  CHECK(run({"families", "--family", "sn-subluminal", "--L", "4pi", "--c", "0.0"}, &out) == 0);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["family"] == "sn-subluminal");
  const double b1 = j["beta1"].get<double>();
  CHECK(b1 > 1.0);
  CHECK(b1 < std::sqrt(2.0));

  std::string err;
  CHECK(run({"families", "--family", "sn-subluminal", "--L", "6.283", "--c", "0.0"}, &out, &err)
        == 2);
  CHECK(err.find("admissible") != std::string::npos);
  CHECK(run({"families", "--family", "dn", "--L", "6.283", "--c", "0.5"}, &out, &err) == 2);
}

TEST_CASE("families profile CSV") {
  const std::string path = "/tmp/phi4_cli_profile.csv";
  std::remove(path.c_str());
  CHECK(run({"families", "--family", "sn-subluminal", "--L", "4pi", "--c", "0.3", "--samples",
             "64", "--out", path}) == 0);
  const auto csv = slurp(path);
  CHECK(csv.rfind("x,re,im\n", 0) == 0);
  CHECK(count_lines(csv) == 65);
  std::remove(path.c_str());

  CHECK(run({"families", "--family", "sn-subluminal", "--L", "4pi", "--c", "0.3", "--samples",
             "64"}) == 1);  // --samples without --out
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({"families", "--family", "sn-subluminal", "--c", "0.0"}) == 1);  // missing --L
  CHECK(run({"families", "--family", "nosuch", "--L", "4pi", "--c", "0.0"}) == 1);
  CHECK(run({"families", "--family", "dn", "--L", "abc", "--c", "1.5"}) == 1);
  CHECK(run({"nosuchcommand"}) == 1);
  CHECK(run({}) == 1);
  CHECK(run({"--help"}) == 0);
}

TEST_CASE("pi literals") {
  std::string out;
  CHECK(run({"families", "--family", "sn-complex", "--L", "2pi", "--c", "1"}, &out) == 0);
  const auto j = nlohmann::json::parse(out);
  CHECK(j["L"].get<double>() == doctest::Approx(2.0 * std::acos(-1.0)).epsilon(1e-15));
}

TEST_CASE("spectrum subcommand") {
  std::string out;
  CHECK(run({"spectrum", "--family", "sn-subluminal", "--L", "4pi", "--c", "0.3", "--N", "128"},
            &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["label"] == "L_sn_real");
  CHECK(j["negative_count"] == 1);
  CHECK(j["eigenvalues"].size() == 8);

  CHECK(run({"spectrum", "--family", "sn-complex", "--L", "2pi", "--c", "1", "--N", "128",
             "--modes", "5"},
            &out) == 0);
  j = nlohmann::json::parse(out);
  CHECK(j["L_sn_R"]["negative_count"] == 1);
  CHECK(j["L_sn_I"]["negative_count"] == 2);
  CHECK(j["L_sn_I"]["eigenvalues"].size() == 5);

  CHECK(run({"spectrum", "--family", "dn", "--L", "2pi", "--c", "1.2", "--N", "128"}, &out) == 0);
  j = nlohmann::json::parse(out);
  CHECK(j["label"] == "L_dn");

  CHECK(run({"spectrum", "--flat", "2.0", "--L", "2pi", "--N", "64", "--modes", "5"}, &out) == 0);
  j = nlohmann::json::parse(out);
  CHECK(j["max_error"].get<double>() <= 1e-10);
  CHECK(j["eigenvalues"][0].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("stability sweep") {
  std::string out;
  CHECK(run({"stability", "--family", "sn-subluminal", "--L", "4pi", "--c-grid", "0.2:0.8:3",
             "--N", "128"},
            &out) == 0);
  CHECK(out.rfind("family,c,L,d_prime,d_second,n_restricted,verdict\n", 0) == 0);
  CHECK(count_lines(out) == 4);
  std::size_t hits = 0;
  for (std::size_t at = out.find("Unstable"); at != std::string::npos;
       at = out.find("Unstable", at + 1))
    ++hits;
  CHECK(hits == 3);

  // inadmissible points are marked, admissible ones still classified
  CHECK(run({"stability", "--family", "sn-subluminal", "--L", "6.0", "--c-grid", "0:0.9:2",
             "--N", "128"},
            &out) == 0);
  CHECK(out.find("RegimeError") != std::string::npos);
  CHECK(out.find("Unstable") != std::string::npos);

  CHECK(run({"stability", "--family", "sn-subluminal", "--L", "6.0", "--c-grid", "0:0:1",
             "--N", "128"},
            &out) == 2);
  CHECK(run({"stability", "--family", "sn-subluminal", "--L", "4pi", "--c-grid", "0.2:0.8:0"})
        == 1);
}

TEST_CASE("evolve subcommand") {
  const std::string path = "/tmp/phi4_cli_trace.csv";
  std::remove(path.c_str());
  std::string out;
  CHECK(run({"evolve", "--family", "sn-subluminal", "--L", "4pi", "--c", "0", "--dt", "0.005",
             "--t-end", "0.1", "--perturb", "odd:1:1e-3", "--out", path, "--N", "64"},
            &out) == 0);
  CHECK(out.find("wrote 3 records") != std::string::npos);
  const auto csv = slurp(path);
  CHECK(csv.rfind("t,energy,momentum,charge,orbital_distance\n", 0) == 0);
  CHECK(count_lines(csv) == 4);
  std::remove(path.c_str());

  CHECK(run({"evolve", "--family", "sn-subluminal", "--L", "4pi", "--c", "0", "--dt", "0",
             "--t-end", "0.1", "--out", path}) == 1);
  CHECK(run({"evolve", "--family", "sn-subluminal", "--L", "4pi", "--c", "0", "--dt", "0.005",
             "--t-end", "0.1", "--perturb", "odd:1e-3", "--out", path}) == 1);
}

TEST_CASE("quick verification suite") {
  std::string out;
  CHECK(run({"verify-all", "--quick"}, &out) == 0);
  CHECK(out.find("skipped (--quick)") != std::string::npos);
  CHECK(count_lines(out) >= 10);
  CHECK(out.find("FAIL") == std::string::npos);
}
