#pragma once

#include <stdexcept>
#include <string>

namespace renyi {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (q = 1, a > 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computed quantity broke an identity that must hold exactly. This
/// signals a bug upstream, never bad user input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// The request would exceed a configured size cap (cells, atoms, ...).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// The requested scale is too fine for the resolution of the input.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to reach its tolerance.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Malformed config text. Carries the offending line and key.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, std::string key);

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

/// Exact arithmetic would overflow; recompute in floating point instead.
class RationalOverflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace renyi
