#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// A response function has no finite zero-frequency value (Drude, plasma).
class StaticLimitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Physically invalid or mutually inconsistent model parameters.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The cavity denominator N^q vanished; impossible for passive media.
class DegenerateDenominatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantity that is undefined for the given arguments (e.g. kappa at xi = k = 0).
class NumericalDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace casimir
