#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coalgsat {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        message_(msg),
        line_(line),
        column_(column) {}
  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

// The incomplete polynomial backend gave up on a one-step problem. `where`
// renders the sequent or type whose check was inconclusive.
class BackendIncomplete : public std::runtime_error {
 public:
  explicit BackendIncomplete(const std::string& where)
      : std::runtime_error("one-step backend inconclusive at " + where), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// A configured cap (children per state, type assignments, ...) was exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace coalgsat
