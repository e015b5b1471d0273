#pragma once

#include <stdexcept>
#include <string>

namespace guamp {

// Argument outside the domain of an operation (non-positive variance, rho >= 1, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation requested on a channel or configuration that does not support it.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input that makes a quantity undefined, e.g. a zero reference vector.
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Hard numerical failure (SVD non-convergence and the like).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The quadrature oracle could not certify its own result.
class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed sweep configuration. field() names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace guamp
