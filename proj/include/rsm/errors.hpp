#pragma once

#include <stdexcept>
#include <string>

namespace rsm {

// Error taxonomy shared by the library and the CLI. The CLI maps these to
// exit codes: parameter/precondition/structural -> 2, capacity -> 3,
// numeric/assertion/certification -> 1.

/// Invalid parameter value (law parameters out of range, malformed config).
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold for the input.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structural requirement on the input failed (e.g. not enough qualifying
/// indices to build a spread set).
class structural_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input exceeds an exact-computation cap; a Monte Carlo path may apply.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric failure: non-finite input, quadrature non-convergence, singular solve.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Randomized certification did not succeed within the attempt budget.
class certification_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

} // namespace rsm
