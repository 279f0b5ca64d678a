#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "desanon/config.hpp"
#include "desanon/ids.hpp"
#include "desanon/trace.hpp"

namespace desanon {

class World;

// Reference one-shot mutex over the anonymous memory. Arbitration is decided
// by a hidden fair FIFO queue; the register traffic follows the behavioural
// contract: a process first reads every register, posts its identity once
// while it waits, re-reads every register after winning arbitration (this is
// what carries the piggybacked counter forward), floods every register with
// its identity to enter, and resets its own cells on release. Entry is
// declared only when every cell actually holds the entrant's identity;
// cells overwritten by a waiting process in the meantime are repaired with
// additional identity writes.

enum class MutexPhase : std::uint8_t {
  Idle,
  AcquireScan,
  ConfirmScan,
  ContendWrite,
  Spin,
  EnterWrite,
  EnterFix,
  InCS,
  ReleaseSweep,
};

struct MutexProcState {
  MutexPhase phase = MutexPhase::Idle;
  std::uint32_t k = 0;            // cursor for scans, enter writes, sweeps
  bool pending_write = false;     // release sweep: next step writes BOTTOM at k
  std::uint8_t writes_this_epoch = 0;
  std::uint8_t acquires_done = 0;
  bool operator==(const MutexProcState&) const = default;
};

/// Hidden arbitration state. Queue order is exactly the order of the first
/// acquire steps; at most one holder exists at any time. Never visible to
/// protocol decisions other than the head test.
struct Arbiter {
  std::vector<int> queue;
  std::optional<int> holder;
  bool operator==(const Arbiter&) const = default;
};

enum class MutexProgress : std::uint8_t { Running, Entered, Released };

/// One acquire step: at most one shared-memory access. Returns Entered on the
/// step that completes entry (which also records the CS_ENTER marker).
MutexProgress mutex_acquire_step(World& w, int ordinal, Trace& tr);

/// One release step of the sweep (read each register, reset those holding the
/// caller's identity). Returns Released on the completing step, which clears
/// the holder and records CS_EXIT. Throws ProtocolViolation when the caller
/// does not hold the critical section.
MutexProgress mutex_release_step(World& w, int ordinal, Trace& tr);

/// Local index a waiting process writes its identity to.
std::uint32_t contender_target(const Config& cfg, const ProcessId& id,
                               int ordinal, int epoch);

}  // namespace desanon
