#pragma once

#include <stdexcept>
#include <string>

namespace qorbit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by an exact zero (scalar or rational function).
class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// A specialization made a denominator vanish identically.
class IllegalSpecialization : public Error {
 public:
  using Error::Error;
};

/// Input data violates a documented precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (expressions, JSON documents).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qorbit
