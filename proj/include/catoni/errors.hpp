#pragma once

#include <stdexcept>
#include <string>

namespace catoni {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (empty sample, non-finite value, bad length).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of a formula does not hold, e.g. n <= 2 log(1/delta).
class ValidityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Bisection stopped before reaching its tolerance. Carries the last bracket.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double lo, double hi, int iterations)
      : Error(what), lo_(lo), hi_(hi), iterations_(iterations) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double lo_;
  double hi_;
  int iterations_;
};

}  // namespace catoni
