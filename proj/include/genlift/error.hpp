#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace genlift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of an operation
/// (inverting zero, a non-prime characteristic, a singular matrix, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The hypotheses of a claim driver or builder are not met.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size bound (field order, pair budget) would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Two operands live over different fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

/// Malformed presentation text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace genlift
