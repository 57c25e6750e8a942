#pragma once

#include <stdexcept>
#include <string>

namespace qrefrig {

/// Bad input: a precondition on user-supplied parameters failed.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures of the numerics themselves (validity, truncation,
/// convergence). The CLI maps every NumericError to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A first-order expansion was evaluated outside the region where it stays
/// positive, i.e. lambda is too large for the expansion to mean anything.
class ValidityDomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A Gibbs sum could not reach its tail bound with the levels available.
class TruncationError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace qrefrig
