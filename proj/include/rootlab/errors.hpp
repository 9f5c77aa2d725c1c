#pragma once

#include <stdexcept>
#include <string>

namespace rootlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (division by exact zero, ln 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series quotient or composition whose valuations make the result non-analytic.
class ValuationError : public Error {
 public:
  using Error::Error;
};

/// A method step hit a zero or non-finite denominator.
class StepBreakdown : public Error {
 public:
  StepBreakdown(std::string substep, const std::string& detail)
      : Error("step breakdown in " + substep + ": " + detail), substep_(std::move(substep)) {}

  const std::string& substep() const noexcept { return substep_; }

 private:
  std::string substep_;
};

/// A trace too short, or with vanishing differences, for an order estimate.
class DegenerateTrace : public Error {
 public:
  using Error::Error;
};

/// Malformed user input: unknown ids, unparsable literals, bad grids.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace rootlab
