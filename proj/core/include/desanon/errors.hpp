#pragma once

#include <stdexcept>

namespace desanon {

/// Bad configuration or malformed input (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A protocol rule was broken at runtime. A legal execution never throws
/// this; it indicates a bug in protocol code or deliberate mutant behaviour.
struct ProtocolViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace desanon
