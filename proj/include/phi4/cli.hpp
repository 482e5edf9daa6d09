#pragma once

namespace phi4::cli {

// Full command-line entry point; returns the process exit code.
// 0 success, 1 usage, 2 regime/convergence, 3 spectrum verification,
// 4 acceptance-suite failure.
int run_cli(int argc, const char* const* argv);

}  // namespace phi4::cli
