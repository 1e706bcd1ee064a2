#pragma once

#include <stdexcept>
#include <string>

namespace rfspectra {

/// Invalid configuration or violated precondition (bad sizes, out-of-range
/// parameters, malformed input files). Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure (eigensolver non-convergence, non-Hermitian input,
/// eigenvalues too negative to clamp). Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rfspectra
