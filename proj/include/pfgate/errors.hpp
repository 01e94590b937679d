#pragma once

#include <stdexcept>
#include <string>

namespace pfgate {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad caller input: dimensions, ranges, flags. The CLI maps these to exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class SchemaError : public InvalidArgument {
 public:
  SchemaError(const std::string& field, const std::string& what)
      : InvalidArgument("device schema error at '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class UnsupportedParameters : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Numerical failures. The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class AmbiguousLabeling : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularPoint : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class HybridizationTooStrong : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepSizeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace pfgate
