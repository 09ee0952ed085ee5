#pragma once

#include <stdexcept>
#include <string>

namespace meshkit {

// Domain errors map to CLI exit code 1, parse errors to exit code 2.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// A computation touched the truncation boundary of a quiver window and the
// result would not be trustworthy.
class OutOfWindowError : public DomainError {
 public:
  explicit OutOfWindowError(const std::string& what) : DomainError(what) {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace meshkit
