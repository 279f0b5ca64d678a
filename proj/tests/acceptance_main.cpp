// Acceptance suite: one pass/fail line per criterion. Run with no arguments
// for all criteria, or pass criterion numbers to run a subset.
//
//   1 exhaustive correctness of the plain variant at (2,3)
//   2 randomized sweep across sizes, 500 seeds each
//   3 counter lemma: release stamps at least m-(n-1) cells
//   4 counter exactness: increments are 1..n (and n+1..2n)
//   5 M(n) membership and successor against brute-force oracles
//   6 symmetry and adversary equivariance
//   7 application layer over the desanonymized memory
//   8 every seeded mutant is caught by at least one checker
//   9 one-bit variant: bit phase ordering and terminal bits

#include <cstdio>
#include <cstring>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "desanon/desa.hpp"
#include "desanon/feasibility.hpp"
#include "desanon/sched.hpp"
#include "desanon/verify.hpp"

using namespace desanon;

namespace {

int g_checks = 0;
std::string g_first_failure;

void expect(bool ok, const std::string& what) {
  ++g_checks;
  if (!ok && g_first_failure.empty()) g_first_failure = what;
}

Config make_cfg(std::uint32_t n, std::uint32_t m, Variant v = Variant::V1) {
  Config cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.variant = v;
  return cfg;
}

std::vector<Permutation> perm_set(std::uint32_t n, std::uint32_t m,
                                  std::uint64_t seed) {
  return random_permutations(n, m, seed * 2654435761ULL + 7);
}

// ---------------------------------------------------------------- criterion 1
bool criterion_exhaustive() {
  const std::vector<std::vector<std::vector<std::uint32_t>>> tables{
      {{1, 2, 3}, {1, 2, 3}}, {{2, 3, 1}, {3, 1, 2}}, {{1, 3, 2}, {2, 1, 3}},
      {{3, 2, 1}, {1, 2, 3}}, {{2, 1, 3}, {3, 2, 1}}};
  for (const auto policy :
       {ContenderPolicy::FixedIndex, ContenderPolicy::SeededRandom}) {
    for (size_t i = 0; i < tables.size(); ++i) {
      Config cfg = make_cfg(2, 3);
      cfg.contender_policy = policy;
      cfg.seed = 17 + i;
      std::vector<Permutation> perms;
      for (const auto& t : tables[i]) perms.push_back(Permutation::from_table(t));
      const auto rep = explore(cfg, perms);
      expect(!rep.limit_exceeded, "exploration hit the state cap");
      expect(rep.terminals > 0, "no terminal states");
      expect(rep.deadlocks == 0, "deadlock found");
      expect(rep.livelock_states == 0, "livelocked states found");
      expect(rep.violations.empty(),
             rep.violations.empty() ? "" : "violation: " + rep.violations[0].check +
                                               " — " + rep.violations[0].detail);
    }
  }
  return g_first_failure.empty();
}

// ---------------------------------------------------------------- criterion 2
bool criterion_sweep() {
  struct Case {
    std::uint32_t n, m;
    Variant v;
  };
  const std::vector<Case> cases{{2, 3, Variant::V1}, {2, 5, Variant::V1},
                                {3, 5, Variant::V1}, {4, 5, Variant::V1},
                                {5, 7, Variant::V1}, {2, 3, Variant::V2},
                                {3, 5, Variant::V2}};
  for (const auto& c : cases) {
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
      Config cfg = make_cfg(c.n, c.m, c.v);
      cfg.seed = seed;
      const auto rr = run(cfg, perm_set(c.n, c.m, seed), SchedulerKind::Random);
      if (!rr.completed) {
        expect(false, "budget exceeded at (" + std::to_string(c.n) + "," +
                          std::to_string(c.m) + ") seed " + std::to_string(seed));
        return false;
      }
      for (const auto& cr : standard_checks(rr.world, rr.trace, rr.completed)) {
        if (!cr.passed) {
          expect(false, cr.name + " failed at (" + std::to_string(c.n) + "," +
                            std::to_string(c.m) + ") seed " +
                            std::to_string(seed) + ": " + cr.detail);
          return false;
        }
        ++g_checks;
      }
    }
  }
  return g_first_failure.empty();
}

// ---------------------------------------------------------------- criterion 3
bool criterion_lemma1() {
  // Integer property, zero tolerance: replay each trace and count, for every
  // first-phase entrant k, the cells its release left stamped with k.
  struct Case {
    std::uint32_t n, m;
  };
  for (const auto& c : std::vector<Case>{{2, 3}, {3, 5}, {5, 7}}) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      Config cfg = make_cfg(c.n, c.m);
      cfg.seed = seed * 3 + 1;
      const auto rr = run(cfg, perm_set(c.n, c.m, seed ^ 0x5a5a), SchedulerKind::Random);
      expect(rr.completed, "sweep run did not complete");
      const auto res = check_lemma1(rr.world, rr.trace);
      if (!res.passed) {
        expect(false, res.detail);
        return false;
      }
      ++g_checks;
    }
  }
  return g_first_failure.empty();
}

// ---------------------------------------------------------------- criterion 4
bool criterion_counters() {
  struct Case {
    std::uint32_t n, m;
    Variant v;
  };
  const std::vector<Case> cases{{2, 3, Variant::V1}, {4, 5, Variant::V1},
                                {3, 5, Variant::V2}};
  for (const auto& c : cases) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      Config cfg = make_cfg(c.n, c.m, c.v);
      cfg.seed = seed * 7 + 5;
      const auto rr = run(cfg, perm_set(c.n, c.m, seed + 9000), SchedulerKind::Random);
      expect(rr.completed, "sweep run did not complete");
      const auto res = check_counter_sequence(rr.world, rr.trace);
      if (!res.passed) {
        expect(false, res.detail);
        return false;
      }
      ++g_checks;
    }
  }
  return g_first_failure.empty();
}

// ---------------------------------------------------------------- criterion 5
namespace oracle {

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool in_M(std::uint32_t n, std::uint64_t m) {
  if (m == 1) return false;
  for (std::uint64_t l = 2; l <= n; ++l) {
    if (gcd(l, m) != 1) return false;
  }
  return true;
}

}  // namespace oracle

bool criterion_feasibility() {
  int pairs = 0;
  for (std::uint32_t n = 2; n <= 10; ++n) {
    for (std::uint64_t m = 2; m <= 100; ++m) {
      expect(is_in_M(n, m) == oracle::in_M(n, m),
             "membership mismatch at n=" + std::to_string(n) + " m=" + std::to_string(m));
      ++pairs;
    }
  }
  expect(pairs == 891, "expected 891 membership pairs");
  for (std::uint32_t n = 2; n <= 6; ++n) {
    for (std::uint64_t mp = 0; mp <= 50; ++mp) {
      std::uint64_t want = mp + 1;
      while (!oracle::in_M(n, want)) ++want;
      expect(next_in_M(n, mp) == want,
             "successor mismatch at n=" + std::to_string(n) + " m'=" + std::to_string(mp));
    }
  }
  return g_first_failure.empty();
}

// ---------------------------------------------------------------- criterion 6
bool criterion_equivariance() {
  for (const auto& c : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 5}}) {
    for (std::uint64_t pair_seed = 1; pair_seed <= 50; ++pair_seed) {
      Config cfg = make_cfg(c.first, c.second);
      cfg.seed = pair_seed;
      const auto perms = perm_set(c.first, c.second, pair_seed + 321);
      const auto res = check_equivariance(cfg, perms, SchedulerKind::Random, pair_seed);
      if (!res.passed) {
        expect(false, res.detail);
        return false;
      }
      ++g_checks;
    }
  }
  return g_first_failure.empty();
}

// ---------------------------------------------------------------- criterion 7
bool criterion_appl() {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Config cfg = make_cfg(3, 5);
    cfg.seed = seed;
    auto rr = run(cfg, perm_set(3, 5, seed + 777), SchedulerKind::Random);
    expect(rr.completed, "application-layer run did not complete");
    Trace tr;
    for (int ord = 1; ord <= 3; ++ord) {
      appl_write(rr.world, ord, static_cast<std::uint32_t>(ord),
                 "payload-" + std::to_string(ord) + "-" + std::to_string(seed), tr);
    }
    for (int reader = 1; reader <= 3; ++reader) {
      for (int y = 1; y <= 3; ++y) {
        const auto got = appl_read(rr.world, reader, static_cast<std::uint32_t>(y), tr);
        expect(got == std::optional<std::string>{"payload-" + std::to_string(y) +
                                                 "-" + std::to_string(seed)},
               "application read mismatch at seed " + std::to_string(seed));
      }
    }
  }

  // A process that computes its map only after application writes begin.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Config cfg = make_cfg(3, 5);
    cfg.seed = seed;
    World w(cfg, perm_set(3, 5, seed + 4242));
    Trace tr;
    auto step_one = [&](int ord) {
      if (w.enabled(ord)) w.step(ord, tr);
    };
    // Hold process 1 back once it reaches its scan loop; let 2 and 3 finish.
    for (int guard = 0; guard < 200000 && !(w.process(1).pc == DesaPc::MapScan &&
                                            !w.enabled(2) && !w.enabled(3));
         ++guard) {
      if (w.process(1).pc != DesaPc::MapScan) step_one(1);
      step_one(2);
      step_one(3);
    }
    expect(w.process(1).pc == DesaPc::MapScan, "no scanning laggard was produced");
    // Whoever won starts writing application values immediately.
    int winner = 0;
    for (int ord = 2; ord <= 3; ++ord) {
      if (w.process(ord).last1) winner = ord;
    }
    expect(winner != 0, "no winner among the finished processes");
    appl_write(w, winner, 2, "early-bird", tr);
    while (w.enabled(1)) w.step(1, tr);
    expect(check_safety(w).passed, "late map computation broke addressing safety");
    expect(appl_read(w, 1, 2, tr) == std::optional<std::string>{"early-bird"},
           "late scanner cannot read the early application value");
  }
  return g_first_failure.empty();
}

// ---------------------------------------------------------------- criterion 8
bool criterion_mutants() {
  const std::vector<std::pair<Mutation, const char*>> mutants{
      {Mutation::SkipDesaBroadcast, "skip-desa-broadcast"},
      {Mutation::SkipBottomSweep, "skip-bottom-sweep"},
      {Mutation::DoubleIncrement, "double-increment"},
      {Mutation::IdOrderBranch, "id-order-branch"},
      {Mutation::BitReset, "bit-reset"},
      {Mutation::ScanUpdatesCt, "scan-updates-ct"}};
  for (const auto& [mu, name] : mutants) {
    bool caught = false;
    for (std::uint64_t seed = 1; seed <= 100 && !caught; ++seed) {
      Config cfg = make_cfg(2, 3, mu == Mutation::BitReset ? Variant::V2 : Variant::V1);
      cfg.seed = seed;
      cfg.mutation = mu;
      const auto perms = perm_set(2, 3, seed + 31);
      const auto rr = run(cfg, perms, SchedulerKind::Random);
      for (const auto& cr : standard_checks(rr.world, rr.trace, rr.completed)) {
        if (!cr.passed) caught = true;
      }
      if (!caught) {
        caught = !check_equivariance(cfg, perms, SchedulerKind::Random, seed).passed;
      }
    }
    expect(caught, std::string("mutant not caught: ") + name);
  }
  return g_first_failure.empty();
}

// ---------------------------------------------------------------- criterion 9
bool criterion_bit_phase() {
  Config cfg = make_cfg(2, 3, Variant::V2);
  cfg.v2_mode = V2Mode::Indexed;
  const auto rep = explore(cfg, std::vector<Permutation>{
                                    Permutation::from_table({2, 3, 1}),
                                    Permutation::from_table({1, 3, 2})});
  expect(rep.terminals > 0, "no terminal states in one-bit exploration");
  expect(rep.violations.empty(),
         rep.violations.empty() ? "" : "one-bit exploration violation: " + rep.violations[0].check);
  expect(rep.deadlocks == 0 && rep.livelock_states == 0,
         "one-bit exploration found stuck states");

  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    Config c = make_cfg(3, 5, Variant::V2);
    c.seed = seed;
    const auto rr = run(c, perm_set(3, 5, seed + 6060), SchedulerKind::Random);
    expect(rr.completed, "one-bit run did not complete");
    const auto res = check_winner(rr.world, rr.trace);
    if (!res.passed) {
      expect(false, res.detail);
      return false;
    }
    ++g_checks;
  }
  return g_first_failure.empty();
}

struct Criterion {
  int number;
  const char* name;
  bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "exhaustive-correctness (plain variant, n=2 m=3, both contender policies, 5 adversaries)", criterion_exhaustive},
    {2, "randomized-sweep (500 seeds per size, full check suite)", criterion_sweep},
    {3, "counter-lemma (release stamps >= m-(n-1) cells, exact integers)", criterion_lemma1},
    {4, "counter-exactness (increments 1..n and n+1..2n, zero tolerance)", criterion_counters},
    {5, "feasible-sizes (891 membership pairs + successor minimality)", criterion_feasibility},
    {6, "equivariance (50 renaming/relabeling pairs at (2,3) and (3,5))", criterion_equivariance},
    {7, "application-layer (payload round-trips + late map computation)", criterion_appl},
    {8, "mutant-detection (6 seeded faults, 100 seeds each)", criterion_mutants},
    {9, "bit-phase (ordering and terminal bits of the one-bit variant)", criterion_bit_phase},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  bool all_ok = true;
  for (const auto& c : kCriteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    g_checks = 0;
    g_first_failure.clear();
    const bool ok = c.fn();
    std::printf("%s  [%d] %s (%d checks)%s%s\n", ok ? "PASS" : "FAIL", c.number,
                c.name, g_checks, ok ? "" : " — ",
                ok ? "" : g_first_failure.c_str());
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
