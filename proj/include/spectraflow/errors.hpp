#pragma once

#include <stdexcept>
#include <string>

namespace spectraflow {

// Invalid arguments or configuration (bad dimensions, bad parameters).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine failed to deliver its contract.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Fock truncation did not converge before the hard cap.
class ConvergenceError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace spectraflow
