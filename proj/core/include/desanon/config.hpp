#pragma once

#include <cstdint>

namespace desanon {

enum class Variant : std::uint8_t { V1, V2 };

/// How the second synchronization phase writes mutex values once a process
/// knows its map. Literal keeps plain mutex bodies; Indexed carries the
/// common register index so late scanners can still compute their map.
enum class V2Mode : std::uint8_t { Literal, Indexed };

/// Where a waiting process posts its single identity write.
enum class ContenderPolicy : std::uint8_t { FixedIndex, SeededRandom };

/// Seeded fault injections used by the test suite. None is the real protocol.
enum class Mutation : std::uint8_t {
  None,
  SkipDesaBroadcast,  // winner computes its map but never broadcasts it
  SkipBottomSweep,    // release reads but never resets its cells
  DoubleIncrement,    // counter advances by 2 inside the critical section
  IdOrderBranch,      // contender target derived from identity internals
  BitReset,           // completion bit of one cell cleared after broadcast
  ScanUpdatesCt,      // plain scans harvest counter stamps
};

struct Config {
  std::uint32_t n = 2;
  std::uint32_t m = 3;
  Variant variant = Variant::V1;
  V2Mode v2_mode = V2Mode::Indexed;
  ContenderPolicy contender_policy = ContenderPolicy::FixedIndex;
  std::uint64_t seed = 0;
  std::uint64_t step_budget = 0;  // 0 means the default 2000*n*m
  Mutation mutation = Mutation::None;
  bool enforce_feasibility = true;
};

/// Throws ConfigError on n < 2, m < 1, or (when the gate is on) m not in M(n).
void validate_config(const Config& cfg);

std::uint64_t effective_budget(const Config& cfg);

}  // namespace desanon
