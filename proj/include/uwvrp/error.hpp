#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uwvrp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates a model invariant (not a tree, duplicate id, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search was asked to handle more requests than its configured guard.
class GuardExceeded : public Error {
 public:
  GuardExceeded(std::size_t size, std::size_t guard)
      : Error("instance has " + std::to_string(size) + " requests, guard is " + std::to_string(guard)),
        size_(size),
        guard_(guard) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t guard() const noexcept { return guard_; }

 private:
  std::size_t size_;
  std::size_t guard_;
};

class UnknownId : public Error {
 public:
  using Error::Error;
};

}  // namespace uwvrp
