#pragma once

#include <stdexcept>
#include <string>

namespace seebf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration value is out of its admissible range.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// A function argument is outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The input violates a precondition that the caller is responsible for,
/// e.g. a recovery procedure fed a solution that is not optimal.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A harvesting demand exceeds what the harvester can deliver.
class InfeasibleDemand : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace seebf
