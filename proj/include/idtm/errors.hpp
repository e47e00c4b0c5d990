#pragma once

#include <stdexcept>
#include <string>

namespace idtm {

// Precondition violated by the caller (mismatched orders, bad ladder, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the real-analytic domain of a map.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Denominator constant term below the singularity floor.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Shooting value beta lies outside the domain of f.
class InadmissibleBetaError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Overflow or non-finite coefficient produced by an operation.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Series solution coefficients stopped being finite during construction.
class NumericalBlowupError : public RangeError {
 public:
  using RangeError::RangeError;
};

// Taylor-remainder error bound could not be formed from the available series.
class BoundUnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The boundary residual has no root at the requested order.
class NoRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration text/flags could not be turned into a valid run.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace idtm
