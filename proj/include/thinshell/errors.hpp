#pragma once

#include <stdexcept>
#include <string>

namespace thinshell {

// Point farther from the surface than the tubular radius, or closest-point
// iteration failed.
struct OutOfTubeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Chart evaluation requested outside the chart's parameter domain.
struct ChartDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid thickness functions, eps, config keys or values.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A quantity requires derivatives the field does not provide.
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A family or check cannot be built on the requested surface/shell.
struct UnsupportedConfiguration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A field violates a precondition (e.g. tangency) by more than tolerance.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace thinshell
