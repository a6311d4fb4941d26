#pragma once

#include <stdexcept>
#include <string>

namespace symtc {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Integer arithmetic left the range of the widest supported integer type.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// A caller broke an operation's precondition (non-canonical coordinates,
/// out-of-bounds access, mismatched lengths).
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// Syntax or semantic error in statement / symmetry / extents text.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

/// Malformed input data: inconsistent extents, symmetry violations in dense
/// values, invalid tensor files.
class ValidationError : public Error {
public:
  using Error::Error;
};

}  // namespace symtc
