// Runs every acceptance criterion and prints one pass/fail line per row.
#include <cstring>
#include <iostream>

#include "phi4/acceptance.hpp"

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;
  const auto rows = phi4::acceptance::run_all(quick, &std::cout);
  const bool ok = phi4::acceptance::all_passed(rows);
  std::cout << (ok ? "all criteria passed" : "FAILURES PRESENT") << std::endl;
  return ok ? 0 : 1;
}
