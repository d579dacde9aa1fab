#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qbmg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unknown vertices, same-color edges, invalid tables, ...
class InputError : public Error {
 public:
  using Error::Error;
};

/// Text-format error carrying a 1-based line and column.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size or order cap was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Two independent routes disagreed, or a structural theorem was contradicted.
/// Either way this points to a bug in a checker, not to bad input.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace qbmg
