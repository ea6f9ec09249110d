#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corefkit {

/// Input that cannot be decoded: bad syntax, bad schema, bad markers.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(std::string msg) : std::runtime_error(std::move(msg)) {}
  ParseError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_ = 0;
};

/// Well-formed input that violates a data invariant or operation precondition.
class DataError : public std::runtime_error {
public:
  explicit DataError(std::string msg) : std::runtime_error(std::move(msg)) {}
};

} // namespace corefkit
