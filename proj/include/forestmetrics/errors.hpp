#pragma once

#include <stdexcept>
#include <string>

namespace forest {

// Invalid argument or violated precondition. The CLI maps this to exit code 2.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input text; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A mathematical identity failed beyond tolerance. CLI exit code 1.
class PropertyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure that valid inputs should never trigger (e.g. a vanishing
// denominator in an update formula).
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace forest
