#pragma once

#include <stdexcept>
#include <string>

namespace potentialforge {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size computation exceeded a configured cap (materialization or vector
// length), or overflowed std::size_t.
class DimensionOverflow : public Error {
 public:
  using Error::Error;
};

class InvalidProfile : public Error {
 public:
  using Error::Error;
};

// Vector/operator size mismatch and similar shape errors.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidGame : public Error {
 public:
  using Error::Error;
};

class InvalidRestriction : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `field()` names the offending JSON field.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// The iterative least-squares solver hit its iteration cap.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace potentialforge
