#pragma once

#include <stdexcept>
#include <string>

namespace crode {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

// Leading coefficient vanished where a given degree was required.
struct DegreeDegeneracy : Error {
  using Error::Error;
};

struct UnsupportedDegree : Error {
  int degree;
  explicit UnsupportedDegree(int d)
      : Error("unsupported degree " + std::to_string(d) + " (closed forms exist for degree <= 3)"), degree(d) {}
};

struct PreconditionError : Error {
  using Error::Error;
};

struct ValidityError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  using Error::Error;
};

struct SingularArgument : Error {
  using Error::Error;
};

// A degenerate configuration that is recognized but not solved.
struct UnsupportedDegeneracy : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  int column;
  ParseError(const std::string& what, int l, int c)
      : Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what), line(l), column(c) {}
};

}  // namespace crode
