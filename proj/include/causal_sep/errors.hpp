#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace causal_sep {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's domain (bad D/N, empty subset, out-of-range m).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operands whose (D, N) shapes do not agree.
class ShapeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An enumeration or a dense allocation would exceed its configured cap.
class BudgetExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An integer count does not fit in 64 bits.
class OverflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A matrix violates Hermiticity or normalization beyond tolerance.
class InvariantViolation : public Error {
 public:
  InvariantViolation(const std::string& invariant, double deviation)
      : Error(invariant + " violated (deviation " + std::to_string(deviation) + ")"),
        invariant_(invariant),
        deviation_(deviation) {}

  const std::string& invariant() const noexcept { return invariant_; }
  double deviation() const noexcept { return deviation_; }

 private:
  std::string invariant_;
  double deviation_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Line and column are 1-based; zero means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line == 0 ? what
                        : what + " at line " + std::to_string(line) + ", column " +
                              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace causal_sep
