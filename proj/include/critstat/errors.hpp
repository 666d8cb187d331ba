#pragma once

#include <stdexcept>
#include <string>

namespace critstat {

// Precondition violations. The CLI maps these (and DomainError) to exit code 2.
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Everything below is a numerical failure (exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RangeError : NumericalError {
  using NumericalError::NumericalError;
};
struct NoRootError : NumericalError {
  using NumericalError::NumericalError;
};
struct InfeasibleError : NumericalError {
  using NumericalError::NumericalError;
};
struct ConvergenceError : NumericalError {
  using NumericalError::NumericalError;
};
struct QuadratureError : NumericalError {
  using NumericalError::NumericalError;
};
struct TruncationError : NumericalError {
  using NumericalError::NumericalError;
};
struct DivergenceError : NumericalError {
  using NumericalError::NumericalError;
};
struct OverflowError : NumericalError {
  using NumericalError::NumericalError;
};
struct FitError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace critstat
