#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "desanon/sim.hpp"
#include "desanon/trace.hpp"

namespace desanon {

enum class SchedulerKind : std::uint8_t { RoundRobin, Random };

struct RunResult {
  bool completed = false;
  std::uint64_t steps = 0;
  std::uint64_t max_wait = 0;  // longest streak a ready process went unpicked
  World world;
  Trace trace;
};

/// Drives all processes until completion or budget exhaustion. RoundRobin
/// cycles through ready processes; Random draws from the seed in the config
/// and forces any ready process that has been passed over for 8*n*m
/// consecutive selections. Budget exhaustion is reported, not thrown.
RunResult run(const Config& cfg, std::vector<Permutation> perms,
              SchedulerKind kind, std::vector<std::uint64_t> id_tokens = {});

struct Violation {
  std::string check;
  std::string detail;
  std::string trace_jsonl;  // witness trace, JSON-lines
};

struct ExploreLimits {
  std::uint64_t max_states = 500000;
};

struct ExplorationReport {
  std::uint64_t states_visited = 0;
  std::uint64_t terminals = 0;
  std::uint64_t deadlocks = 0;
  // States from which no terminal state is reachable: a run stuck in such a
  // state can spin forever. Nonzero here is how a diverging variant shows up.
  std::uint64_t livelock_states = 0;
  std::uint64_t terminal_fingerprint = 0;  // order-independent hash of terminals
  bool limit_exceeded = false;
  std::vector<Violation> violations;
};

/// Exhaustive depth-first exploration of every interleaving, deduplicating
/// configurations by their canonical keys. Each distinct terminal state is
/// checked once against the standard property suite using the path that
/// first reached it; global deadlocks and in-flight mutual exclusion are
/// checked on every state. Intended for n <= 3, m <= 5.
ExplorationReport explore(const Config& cfg, std::vector<Permutation> perms,
                          const ExploreLimits& limits = {});

/// Re-runs a configuration and compares against a stored JSON-lines trace.
/// Throws ConfigError when the stored trace cannot belong to the
/// configuration (e.g. it references registers beyond m).
bool replay_matches(const Config& cfg, const std::vector<Permutation>& perms,
                    SchedulerKind kind, const std::string& jsonl);

}  // namespace desanon
