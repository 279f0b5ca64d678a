#pragma once

#include <cstdint>
#include <optional>

namespace desanon {

/// Opaque process identity. Protocol code may only compare identities for
/// equality: there is no ordering and no way to look inside one. The harness
/// side (IdAccess) mints identities and reads tokens back out for
/// serialization and renaming experiments; protocol code never uses it.
class ProcessId {
 public:
  ProcessId() = delete;
  bool operator==(const ProcessId&) const = default;

 private:
  explicit ProcessId(std::uint64_t token) : token_(token) {}
  std::uint64_t token_;
  friend struct IdAccess;
};

/// Harness-side escape hatch for ProcessId internals.
struct IdAccess {
  static ProcessId make(std::uint64_t token) { return ProcessId(token); }
  static std::uint64_t token(const ProcessId& id) { return id.token_; }
};

/// The value position of a register: a process identity or the neutral
/// value BOTTOM (represented as an empty optional).
using RegisterValue = std::optional<ProcessId>;

inline const RegisterValue kBottom{};

}  // namespace desanon
