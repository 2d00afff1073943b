#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace alexq {

// Base of every error the library raises. The CLI maps the subclasses onto
// exit codes, so callers should not throw anything else across the API.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a precondition (mismatched arity, zero assignment, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input. Line is 1-based; 0 means "no line information".
class ParseError : public UsageError {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : UsageError(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A request exceeded a documented size limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Mathematical domain violation, e.g. inverting a non-unit.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An invariant that should hold by construction did not.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace alexq
