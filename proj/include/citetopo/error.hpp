#pragma once

#include <stdexcept>
#include <string>

namespace citetopo {

/// Malformed input data: unreadable files, bad edge-list lines, empty graphs,
/// manifest count mismatches.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Edge-list syntax error, carrying the offending location.
class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A computation would exceed a configured resource bound.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace citetopo
