#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "desanon/ids.hpp"
#include "desanon/mutex.hpp"
#include "desanon/permutation.hpp"
#include "desanon/trace.hpp"
#include "desanon/word.hpp"

namespace desanon {

class World;

/// Program counter of the desanonymization protocol. The first phase is the
/// plain protocol (acquire, bump the shared counter, release, then either
/// broadcast the canonical naming or scan until the snapshot is fully
/// indexed). The second phase exists only in the one-bit variant and repeats
/// the synchronization on the per-register completion bits.
enum class DesaPc : std::uint8_t {
  Acquire1,
  Counter1,
  Release1,
  Broadcast,
  MapScan,
  Acquire2,
  Counter2,
  Release2,
  BitBroadcast,
  BitScan,
  MutantBitReset,
  Done,
};

struct DesaProcess {
  ProcessId id;
  int ordinal = 0;  // harness handle, never consulted by protocol decisions
  std::uint32_t ct = 0;
  bool last1 = false;
  bool last2 = false;
  std::vector<RegisterWord> sm;  // laggard snapshot (1-based via index-1)
  std::vector<std::uint8_t> bits;
  std::optional<Permutation> map;
  std::optional<Permutation> map_inv;
  DesaPc pc = DesaPc::Acquire1;
  std::uint32_t k = 0;       // broadcast cursor
  std::uint32_t scan_k = 0;  // scan cursor
  MutexProcState mx;

  explicit DesaProcess(ProcessId pid, int ord) : id(pid), ordinal(ord) {}
  bool operator==(const DesaProcess&) const = default;

  int epoch() const {
    return (pc >= DesaPc::Acquire2 && pc != DesaPc::Done) ? 2 : 1;
  }
};

enum class StepResult : std::uint8_t { Running, Finished };

/// Mutex-path read: one atomic read, harvest the counter stamp into the
/// caller's counter, and return the value position of the body.
RegisterValue instrumented_read(World& w, int ordinal, std::uint32_t x,
                                Trace& tr, StepDetail detail);

/// Mutex-path write of the caller's identity or BOTTOM, stamped with the
/// caller's counter. Once the caller knows its map (Indexed mode), the body
/// carries the common index of the written cell. Throws ProtocolViolation on
/// a foreign identity.
void instrumented_write(World& w, int ordinal, std::uint32_t x,
                        const RegisterValue& v, Trace& tr, StepDetail detail);

/// Advances one process by exactly one step (at most one memory access).
StepResult desa_step(World& w, int ordinal, Trace& tr);

/// Builds the addressing map from a snapshot whose every entry carries a
/// common index: map(y) = x where entry x carries y. Throws
/// ProtocolViolation on a missing or duplicated index.
Permutation compute_map_from_snapshot(const std::vector<RegisterWord>& sm);

/// Application layer: write a payload under the common name y (one write at
/// local index map(y), bit untouched, counter stamped).
void appl_write(World& w, int ordinal, std::uint32_t y, std::string payload,
                Trace& tr);

/// Application layer read of common name y. Returns an empty optional when
/// the cell does not (yet) hold an application value.
std::optional<std::string> appl_read(World& w, int ordinal, std::uint32_t y,
                                     Trace& tr);

}  // namespace desanon
