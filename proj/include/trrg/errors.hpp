#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trrg {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (unknown clock, negative delay, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Lexical or grammatical error in a text artifact. Positions are 1-based.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A syntactically valid document describes an ill-formed model.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Nondeterminism outside the class the determinizer supports.
class UnsupportedNondeterminism : public Error {
 public:
  using Error::Error;
};

// An operation was applied to a value of the wrong kind (e.g. a tester where a TRRG is expected).
class ContractError : public Error {
 public:
  using Error::Error;
};

// A configured resource limit was reached (e.g. too many test cases).
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// The canonical tester does not classify some (state, action, region) exactly once.
class CompletenessError : public Error {
 public:
  using Error::Error;
};

}  // namespace trrg
