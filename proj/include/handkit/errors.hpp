#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace handkit {

/// Base class for all handkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a documented invariant. Carries the config field path
/// when the violation was detected while loading a hand spec.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Malformed input file (JSON, CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A joint angle lies outside its configured range of motion.
class JointLimitError : public Error {
 public:
  using Error::Error;
};

/// Geometry outside the supported model family (e.g. unequal rolling radii).
class UnsupportedGeometryError : public Error {
 public:
  using Error::Error;
};

/// A route or record references a joint that is not present.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A linear system does not determine all requested unknowns.
class UnderdeterminedError : public Error {
 public:
  using Error::Error;
};

/// Marker or point geometry too degenerate to define an orientation.
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace handkit
