#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pinatubo {

/// Base class for every error raised by the simulator.
struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parameter or pulse outside its documented invariants.
struct InvalidParams : SimError {
  using SimError::SimError;
};

/// Pulse matches no read/set/reset regime.
struct AmbiguousPulse : SimError {
  using SimError::SimError;
};

struct InvalidDimensions : SimError {
  using SimError::SimError;
};

struct IndexOutOfRange : SimError {
  using SimError::SimError;
};

struct EmptyActivation : SimError {
  using SimError::SimError;
};

/// The output-'1' and output-'0' resistance classes overlap; no reference
/// resistance can separate them.
struct InfeasibleGate : SimError {
  using SimError::SimError;
};

/// Wrong number of sources for the requested operation, or an invalid
/// source/destination combination.
struct ArityMismatch : SimError {
  using SimError::SimError;
};

/// Script syntax error. Carries the 1-based line number.
struct ParseError : SimError {
  ParseError(std::size_t line, const std::string& reason)
      : SimError("line " + std::to_string(line) + ": " + reason),
        line_no(line) {}
  std::size_t line_no;
};

struct ConfigError : SimError {
  using SimError::SimError;
};

struct IoError : SimError {
  using SimError::SimError;
};

}  // namespace pinatubo
