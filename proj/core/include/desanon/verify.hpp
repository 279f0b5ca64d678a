#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "desanon/sched.hpp"
#include "desanon/sim.hpp"
#include "desanon/trace.hpp"

namespace desanon {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // first violating step or state summary; empty on pass
};

/// Addressing safety: every map is a bijection and, for every common name y,
/// all processes reach the same physical cell through their own map and
/// their own adversary permutation.
CheckResult check_safety(const World& final_world);

/// All processes finished within the budget under a fair scheduler.
CheckResult check_liveness(const World& final_world, bool completed);

/// Counter lemma: the k-th process to enter the first-phase critical section
/// leaves at least m-(n-1) cells carrying stamp k (written by its own
/// release sweep) at the moment its release completes.
CheckResult check_lemma1(const World& final_world, const Trace& tr);

/// Counter exactness: first-phase increments, in critical-section order, are
/// exactly 1..n (and n+1..2n in the second phase); each process's counter is
/// non-decreasing; the final first-phase counters of the plain variant form
/// the set {1..n}.
CheckResult check_counter_sequence(const World& final_world, const Trace& tr);

/// Bundles the six mutex monitors below.
CheckResult check_mutex_contract(const World& final_world, const Trace& tr);

// The individual mutex monitors. Pure functions of the trace (plus the
// immutable run inputs carried by the World).
bool mutual_exclusion(const World& w, const Trace& tr);
bool deadlock_freedom(const World& w, const Trace& tr);
bool mutex1_writes_id_or_bottom(const World& w, const Trace& tr);
bool mutex2_reads_all_before_cs(const World& w, const Trace& tr);
bool mutex3_all_cells_on_entry(const World& w, const Trace& tr);
bool mutex4_at_most_one_write(const World& w, const Trace& tr);

/// Winner properties: exactly one process saw the counter reach n and its
/// map is the identity; in the one-bit variant exactly one saw 2n, every
/// completion bit is set at the end, bits never decay, and nobody leaves the
/// bit-scan loop before the first completion bit is written.
CheckResult check_winner(const World& final_world, const Trace& tr);

/// Symmetry and adversary equivariance: renaming identities through a random
/// bijection, or relabeling physical cells through a random permutation,
/// leaves the trace unchanged up to the corresponding renaming.
CheckResult check_equivariance(const Config& cfg,
                               const std::vector<Permutation>& perms,
                               SchedulerKind kind, std::uint64_t pair_seed);

/// The standard post-run suite (everything except equivariance).
std::vector<CheckResult> standard_checks(const World& final_world,
                                         const Trace& tr, bool completed);

}  // namespace desanon
