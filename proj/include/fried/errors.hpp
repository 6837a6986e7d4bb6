#pragma once

#include <stdexcept>
#include <string>

namespace fried {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mathematically inadmissible input (exit code 1 in the CLI).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A sum or continuation could not be carried out, or an integer width was
/// exceeded (exit code 2 in the CLI).
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Exact integer arithmetic would leave the documented 64-bit width.
class CapacityError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// A dynamical determinant vanishes at the requested point.
class ResonanceAtZero : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// A machine-checked sign or normalization convention failed.
class ConventionViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace fried
