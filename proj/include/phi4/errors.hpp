#pragma once

#include <stdexcept>
#include <string>

namespace phi4 {

// Requested parameters lie outside the admissible regime of a wave family
// (speed interval, minimal torus size, ...).
struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iteration failed to meet its target: bisection hit a degenerate modulus,
// an eigensolver did not converge, a residual check after a solve failed.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation asked for a quantity a family does not carry
// (e.g. the stability index of a superluminal wave).
struct UnsupportedFamilyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation asked for a quantity the field type does not carry
// (e.g. the momentum functional of a complex-valued field).
struct UnsupportedFieldError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace phi4
