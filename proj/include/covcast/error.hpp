#pragma once

#include <stdexcept>
#include <string>

namespace covcast {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A hover position outside the service area.
class InvalidHover : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A configuration document is malformed or out of range. Carries the field
/// path so the CLI can report it.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// An SNR fell outside the linear band of the decoding-error approximation
/// where a formula requires it.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// A planning problem has no feasible solution.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Every candidate (hover position or relay) was infeasible.
class AllInfeasible : public Infeasible {
 public:
  using Infeasible::Infeasible;
};

}  // namespace covcast
