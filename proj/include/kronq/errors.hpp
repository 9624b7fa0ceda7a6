#pragma once

#include <stdexcept>
#include <string>

namespace kronq {

// Root of every error the library raises. The CLI maps ConvergenceError to
// exit code 3 and every other Error to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Dimensions whose product does not fit the platform index range.
class SizeError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf entries or otherwise malformed numeric input.
class ValueError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// The divisor A is the zero matrix (nnz(A) = 0).
class ZeroDivisorError : public Error {
 public:
  using Error::Error;
};

// The trace realization was asked for A with tr(A) = 0.
class SingularRealizationError : public Error {
 public:
  using Error::Error;
};

class InvalidWeightsError : public Error {
 public:
  using Error::Error;
};

class InvalidRealizationError : public Error {
 public:
  using Error::Error;
};

class InvalidFamilyError : public Error {
 public:
  using Error::Error;
};

class UnsupportedInputError : public Error {
 public:
  using Error::Error;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace kronq
