#pragma once

#include <stdexcept>
#include <string>

namespace vdwmirror {

// Argument outside the domain of a physical formula (non-positive
// frequency, distance, temperature, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Quadrature failed to converge, exact polariton resonance, singular solve.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The Liouvillian nullspace is not one-dimensional.
class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Malformed or inconsistent input files / parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A simulation scenario cannot be set up or ran into an invalid state.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vdwmirror
