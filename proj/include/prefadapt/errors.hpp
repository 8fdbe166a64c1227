#pragma once

#include <stdexcept>
#include <string>

namespace prefadapt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a documented precondition or type invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Vertex enumeration was asked for an instance beyond its size guard.
class DimensionLimitError : public Error {
 public:
  using Error::Error;
};

/// The solver reached a state the instance invariants rule out
/// (unbounded or infeasible forward LP, iteration limit).
class InternalError : public Error {
 public:
  using Error::Error;
};

/// The preference cone has no interior; conflicts were not resolved.
class InfeasibleConeError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration is malformed. `field` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace prefadapt
