#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "desanon/word.hpp"

namespace desanon {

enum class EntryKind : std::uint8_t { Read, Write, CsEnter, CsExit, Local };

/// Fine-grained classification of a step, used by the trace monitors.
/// The serialized pc label is derived from this plus the protocol line.
enum class StepDetail : std::uint8_t {
  AcqScan,       // acquire: initial read of every register
  AcqConfirm,    // acquire: re-read of every register after winning arbitration
  AcqContend,    // acquire: the single identity write of a waiting process
  AcqSpin,       // acquire: waiting read of local index 1
  AcqEnter,      // acquire: identity write while entering
  AcqFix,        // acquire: extra identity write repairing an overwritten cell
  RelRead,       // release: sweep read
  RelWrite,      // release: sweep write of BOTTOM
  CsEnterMark,   // critical section entered
  CsExitMark,    // critical section left
  CounterIncr,   // local counter increment inside the critical section
  DesaBroadcast, // winner writes the canonical naming
  MapScan,       // laggard scan waiting for a fully indexed snapshot
  BitWrite,      // second-phase winner sets a completion bit
  BitScan,       // second-phase laggard scans completion bits
  ApplWrite,     // application layer write
  ApplRead,      // application layer read
};

struct TraceEntry {
  std::uint64_t step = 0;
  int ordinal = 0;
  EntryKind kind = EntryKind::Read;
  std::uint32_t local_index = 0;     // 0 when not an access
  std::uint32_t physical_index = 0;  // 0 when not an access
  std::optional<RegisterWord> before;
  std::optional<RegisterWord> after;
  std::string pc;
  StepDetail detail = StepDetail::AcqScan;
  int epoch = 1;
  std::uint32_t ct_after = 0;  // acting process's counter after the step
};

using Trace = std::vector<TraceEntry>;

/// Tag describing the step a memory access belongs to.
struct StepTag {
  std::string pc;
  StepDetail detail = StepDetail::AcqScan;
  int epoch = 1;
};

void append_access(Trace& tr, int ordinal, EntryKind kind, std::uint32_t local,
                   std::uint32_t phys, const RegisterWord& before,
                   const RegisterWord& after, const StepTag& tag);

void append_marker(Trace& tr, int ordinal, EntryKind kind, const StepTag& tag);

}  // namespace desanon
