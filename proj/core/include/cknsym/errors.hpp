#pragma once

#include <stdexcept>
#include <string>

namespace cknsym {

/// Base class for every error raised by the library. `kind()` is a short
/// machine-readable tag ("domain", "degenerate", ...) used by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// An argument lies outside the domain of the formula.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error("domain", message) {}
};

/// The formula is defined but collapses (zero exponent denominator, alpha = 0, ...).
class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& message) : Error("degenerate", message) {}
};

/// A bound or bracket is requested outside the parameter range where it is claimed.
class ApplicabilityError : public Error {
 public:
  explicit ApplicabilityError(const std::string& message) : Error("applicability", message) {}
};

class BracketFailure : public Error {
 public:
  explicit BracketFailure(const std::string& message) : Error("bracket_failure", message) {}
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(const std::string& message) : Error("no_convergence", message) {}
};

class QuadratureError : public Error {
 public:
  explicit QuadratureError(const std::string& message) : Error("quadrature", message) {}
};

/// A bounded scan found its minimum on the boundary of the scanned range.
class BoundaryMinimumError : public Error {
 public:
  explicit BoundaryMinimumError(const std::string& message) : Error("boundary_minimum", message) {}
};

}  // namespace cknsym
