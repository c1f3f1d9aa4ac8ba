#pragma once

#include <stdexcept>
#include <string>

namespace pseudotopo {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Validation of inputs (CLI maps these to exit code 3).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NonSquare : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class NonFinite : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class NotHermitian : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class NotPositiveDefinite : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class IndexOutOfRange : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class AxisNotUnit : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class WrongModel : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class WrongProfile : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class SingularMetric : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class GaplessModel : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class StepTooSmall : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class ResolutionTooCoarse : public ValidationError {
 public:
  using ValidationError::ValidationError;
};
class NoChiralOperator : public Error {
 public:
  using Error::Error;
};
class NoGapIsolation : public Error {
 public:
  using Error::Error;
};

// Numerical failures (CLI maps these to exit code 2).
class NumericalError : public Error {
 public:
  using Error::Error;
};
class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class NotConverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class IllConditioned : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace pseudotopo
