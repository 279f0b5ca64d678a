#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "desanon/ids.hpp"

namespace desanon {

// Register bodies are tagged so that mutex traffic, desanonymization
// broadcasts and application values can share the same cells without
// confusion. IndexedMutexVal is the mutex body used once a process knows
// its addressing map: it carries the common index alongside the value so
// that late map computations keep working.

struct MutexVal {
  RegisterValue val = kBottom;
  bool operator==(const MutexVal&) const = default;
};

struct DesaVal {
  std::uint32_t y = 0;
  bool operator==(const DesaVal&) const = default;
};

struct IndexedMutexVal {
  std::uint32_t y = 0;
  RegisterValue val = kBottom;
  bool operator==(const IndexedMutexVal&) const = default;
};

struct ApplVal {
  std::uint32_t y = 0;
  std::string payload;
  bool operator==(const ApplVal&) const = default;
};

using RegisterBody = std::variant<MutexVal, DesaVal, IndexedMutexVal, ApplVal>;

/// One anonymous register: a write-once bit, a counter stamp, and the body.
struct RegisterWord {
  std::uint8_t bit = 0;
  std::uint32_t ct = 0;
  RegisterBody body = MutexVal{};
  bool operator==(const RegisterWord&) const = default;
};

/// The value position seen by the mutex: the identity/BOTTOM slot of
/// MutexVal and IndexedMutexVal; BOTTOM for DESA and APPL bodies.
RegisterValue value_position(const RegisterBody& body);

/// The common index carried by the body, if any (DESA, indexed mutex, APPL).
std::optional<std::uint32_t> carried_index(const RegisterBody& body);

}  // namespace desanon
