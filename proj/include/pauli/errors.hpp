#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pauli {

/// Bad argument to a library call: shape mismatch, non-positive length,
/// non-finite coordinate and the like.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field was in the wrong representation (physical vs spectral) for the
/// requested operation.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite value produced while evaluating a field or tracing a
/// characteristic.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite state encountered during time stepping.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::size_t step, const std::string& what);

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Invalid run configuration (unknown preset, non-integral step count, ...).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pauli
