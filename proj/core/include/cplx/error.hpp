#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cplx {

// Base for every error raised by the library. Callers that only care about
// "did it work" can catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument or precondition violation (usage errors).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed external input: CSV, SDF, JSON. Carries the 1-based line number
// when one is known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Filesystem failures (unreadable or unwritable paths).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cplx
