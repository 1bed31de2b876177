#pragma once

#include <stdexcept>
#include <string>

namespace optomech {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad dimension, shape mismatch, or a state/operator without the structure an
/// operation requires (e.g. partial trace of a single-mode object).
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Rejected parameter set (negative couplings, zero frequencies, drive at
/// cavity resonance, malformed time grid, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Adaptive integrator could not proceed (step underflow, NaN state).
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// A quantity that must be real/positive by construction came out otherwise,
/// beyond tolerance. Always indicates a bug upstream, never user input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Scenario/config file problems (unknown key, unparsable value, missing file).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace optomech
