#pragma once

#include <stdexcept>
#include <string>

namespace rmcalc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad input supplied by a caller: malformed text, out-of-range parameters.
struct InvalidArgument : Error {
  using Error::Error;
};

struct ParseError : InvalidArgument {
  ParseError(const std::string& msg, int line, int column)
      : InvalidArgument(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  int line;
  int column;
};

// A computation that cannot be completed: degenerate polynomial, non-convergence.
struct ComputationError : Error {
  using Error::Error;
};

}  // namespace rmcalc
