#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "desanon/anonmem.hpp"
#include "desanon/config.hpp"
#include "desanon/desa.hpp"
#include "desanon/mutex.hpp"

namespace desanon {

/// Immutable per-run inputs shared by all copies of a World.
struct WorldContext {
  Config cfg;
  std::vector<std::uint64_t> id_tokens;
};

/// One full system configuration: memory, every process state, and the
/// hidden arbiter. Worlds are plain values; copying one is cheap enough for
/// exhaustive exploration, and two Worlds compare equal field by field.
/// The trace is deliberately kept outside so state copies stay small.
class World {
 public:
  /// id_tokens empty means the default identities 1..n.
  World(const Config& cfg, std::vector<Permutation> perms,
        std::vector<std::uint64_t> id_tokens = {});

  const Config& config() const { return ctx_->cfg; }
  std::uint32_t n() const { return ctx_->cfg.n; }
  std::uint32_t m() const { return ctx_->cfg.m; }

  bool all_done() const;
  bool enabled(int ordinal) const;
  std::vector<int> enabled_ordinals() const;

  /// One scheduler turn for the given process: at most one memory access.
  void step(int ordinal, Trace& tr);

  AnonymousMemory& memory() { return mem_; }
  const AnonymousMemory& memory() const { return mem_; }
  DesaProcess& process(int ordinal) { return procs_[static_cast<size_t>(ordinal) - 1]; }
  const DesaProcess& process(int ordinal) const {
    return procs_[static_cast<size_t>(ordinal) - 1];
  }
  const std::vector<DesaProcess>& processes() const { return procs_; }
  Arbiter& arbiter() { return arb_; }
  const Arbiter& arbiter() const { return arb_; }

  /// Canonical byte serialization of the mutable state. Equal keys iff equal
  /// states, so hash collisions cannot conflate distinct configurations.
  std::string state_key() const;

  bool operator==(const World& other) const {
    return mem_ == other.mem_ && procs_ == other.procs_ && arb_ == other.arb_;
  }

 private:
  std::shared_ptr<const WorldContext> ctx_;
  AnonymousMemory mem_;
  std::vector<DesaProcess> procs_;
  Arbiter arb_;
};

}  // namespace desanon
