#pragma once

#include <stdexcept>
#include <string>

namespace bbd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Mismatched lengths, grids, or weight counts.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Requested interval does not cover enough probability mass.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Operation applied to the wrong kind of distribution (e.g. discretizing a pmf).
class TypeError : public Error {
 public:
  using Error::Error;
};

/// No closed form exists for the requested pair.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference estimates disagree; the step is too small or too large.
class NumericInstabilityError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text or unreadable file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace bbd
