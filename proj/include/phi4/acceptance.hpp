#pragma once
// End-to-end verification suite: each criterion exercises a pinned analytic
// target (oracle agreement, spectral counts, index signs, integrator
// fidelity, orbital phenomenology) and reports pass/fail with the measured
// values.

#include <iosfwd>
#include <string>
#include <vector>

namespace phi4::acceptance {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // measured values, or the reason a row was skipped
  double seconds = 0.0;
};

// Runs the criteria in order. quick skips the long evolution rows (they are
// reported as skipped and count as passing). When log is given, one row is
// streamed per criterion as it finishes.
std::vector<CriterionResult> run_all(bool quick = false, std::ostream* log = nullptr);

bool all_passed(const std::vector<CriterionResult>& rows);
std::string result_line(const CriterionResult& row);

}  // namespace phi4::acceptance
