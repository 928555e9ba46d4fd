#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace esym {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (bad parameters, wrong shape of input).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Operands live in different ring modes (commutative vs ordered monomials).
class ModeMismatchError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A variable required by the operation has no value / weight / substitute.
class MissingVariableError : public PreconditionError {
 public:
  MissingVariableError(const std::string& what, unsigned var)
      : PreconditionError(what + ": x" + std::to_string(var)), var_(var) {}
  unsigned variable() const { return var_; }

 private:
  unsigned var_;
};

/// Graph-level defects: cycles, fan-in violations, shared nodes in a formula.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& expected, const std::string& found)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected +
              ", found " + found),
        line_(line),
        column_(column),
        expected_(expected) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string expected_;
};

}  // namespace esym
