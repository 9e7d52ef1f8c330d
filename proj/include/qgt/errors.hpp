#pragma once

#include <stdexcept>
#include <string>

namespace qgt {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// α ≤ 0 was supplied where the Gaussian reference needs α > 0.
class NonPositiveAlpha : public Error {
 public:
  explicit NonPositiveAlpha(double alpha)
      : Error("alpha must be positive, got " + std::to_string(alpha)) {}
};

/// An integral over an unbounded domain has no decay toward infinity.
class DivergentIntegral : public Error {
 public:
  using Error::Error;
};

/// Requested perturbative order exceeds the configured cap.
class OrderOverflow : public Error {
 public:
  OrderOverflow(int requested, int maximum)
      : Error("perturbative order " + std::to_string(requested) +
              " exceeds the maximum " + std::to_string(maximum)) {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class BasisTooSmall : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class StepTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace qgt
