#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request exceeds a configured memory or transform-length budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the range covered by a table.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A zero table does not reach the requested height.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// The quadrature grid is too coarse for the series it samples.
class AliasingError : public Error {
 public:
  using Error::Error;
};

/// A root finder was handed an interval without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// An envelope shape vanishes where a residual must be scaled by it.
class DegenerateEnvelopeError : public Error {
 public:
  using Error::Error;
};

/// Binary cache or text input is malformed.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Text input failed to parse; carries the 1-based offending line.
class ParseError : public FormatError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : FormatError(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace glab
