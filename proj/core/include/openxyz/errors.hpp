#pragma once

#include <stdexcept>
#include <string>

namespace oxyz {

// All numerical-abort conditions derive from NumericalError so the CLI can
// map them to a single exit code.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergent : NumericalError {
  using NumericalError::NumericalError;
};

// A sigma/theta denominator fell below the pole threshold (1e-10).
struct NearPole : NumericalError {
  using NumericalError::NumericalError;
};

struct SingularInverse : NumericalError {
  using NumericalError::NumericalError;
};

struct SingularIntertwiner : NumericalError {
  using NumericalError::NumericalError;
};

struct DegenerateF : NumericalError {
  using NumericalError::NumericalError;
};

struct OffShellRoots : NumericalError {
  using NumericalError::NumericalError;
};

struct CollidingRoots : NumericalError {
  using NumericalError::NumericalError;
};

struct CollidingArguments : NumericalError {
  using NumericalError::NumericalError;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace oxyz
