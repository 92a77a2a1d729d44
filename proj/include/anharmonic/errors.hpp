#pragma once

#include <stdexcept>
#include <string>

namespace anharmonic {

/// Base of every error thrown by the library. `kind()` is a stable token used
/// in machine-readable error records.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept = 0;
};

/// Input lies outside the mathematical domain of an operation (stable-region
/// coupling, unsupported degree, non-positive beta, ...).
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// An index or truncation order outside the stored data.
class RangeError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "range"; }
};

/// A configured resource cap (degree, order) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "resource"; }
};

/// An iterative or adaptive procedure failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  const char* kind() const noexcept override { return "convergence"; }
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace anharmonic
