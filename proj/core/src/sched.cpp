#include "desanon/sched.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_map>

#include "desanon/errors.hpp"
#include "desanon/json_io.hpp"
#include "desanon/verify.hpp"

#include <json.hpp>

namespace desanon {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

RunResult run(const Config& cfg, std::vector<Permutation> perms,
              SchedulerKind kind, std::vector<std::uint64_t> id_tokens) {
  World w(cfg, std::move(perms), std::move(id_tokens));
  Trace tr;
  const std::uint64_t budget = effective_budget(cfg);
  const std::uint64_t force_after = std::uint64_t{8} * cfg.n * cfg.m;
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::uint64_t> waits(cfg.n, 0);
  std::uint64_t steps = 0;
  std::uint64_t max_wait = 0;
  int rr_last = 0;

  while (!w.all_done() && steps < budget) {
    const auto enabled = w.enabled_ordinals();
    int pick = 0;
    if (kind == SchedulerKind::RoundRobin) {
      for (std::uint32_t off = 1; off <= cfg.n && pick == 0; ++off) {
        const int cand = static_cast<int>((rr_last + off - 1) % cfg.n) + 1;
        if (w.enabled(cand)) pick = cand;
      }
      rr_last = pick;
    } else {
      // Fairness: a ready process passed over for 8*n*m selections goes next.
      for (int ord : enabled) {
        if (waits[static_cast<size_t>(ord) - 1] >= force_after) {
          pick = ord;
          break;
        }
      }
      if (pick == 0) pick = enabled[rng() % enabled.size()];
    }
    for (int ord : enabled) {
      if (ord != pick) {
        std::uint64_t& wcount = waits[static_cast<size_t>(ord) - 1];
        ++wcount;
        max_wait = std::max(max_wait, wcount);
      }
    }
    waits[static_cast<size_t>(pick) - 1] = 0;
    w.step(pick, tr);
    ++steps;
  }

  RunResult res{w.all_done(), steps, max_wait, std::move(w), std::move(tr)};
  return res;
}

namespace {

std::vector<CheckResult> terminal_checks(const World& w, const Trace& tr) {
  return {check_safety(w), check_winner(w, tr), check_counter_sequence(w, tr),
          check_lemma1(w, tr), check_mutex_contract(w, tr)};
}

}  // namespace

ExplorationReport explore(const Config& cfg, std::vector<Permutation> perms,
                          const ExploreLimits& limits) {
  ExplorationReport rep;
  World root(cfg, std::move(perms));
  Trace trace;

  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> succs;
  std::vector<char> is_terminal;

  auto intern = [&](const World& w) {
    auto key = w.state_key();
    const auto next_id = static_cast<std::uint32_t>(index.size());
    auto [it, fresh] = index.try_emplace(std::move(key), next_id);
    if (fresh) {
      succs.emplace_back();
      is_terminal.push_back(0);
    }
    return std::pair<std::uint32_t, bool>{it->second, fresh};
  };

  auto record_violation = [&](std::string check, std::string detail) {
    rep.violations.push_back(
        Violation{std::move(check), std::move(detail), trace_to_jsonl(trace)});
  };

  struct Frame {
    World w;
    std::uint32_t id;
    std::vector<int> pending;
    size_t next;
    size_t trace_mark;
  };

  const auto [root_id, root_fresh] = intern(root);
  (void)root_fresh;
  std::vector<Frame> stack;
  {
    auto pending = root.enabled_ordinals();
    stack.push_back(Frame{std::move(root), root_id, std::move(pending), 0, 0});
  }

  bool over_limit = false;
  while (!stack.empty() && !over_limit) {
    Frame& top = stack.back();
    if (top.next >= top.pending.size()) {
      trace.resize(top.trace_mark);
      stack.pop_back();
      continue;
    }
    const int ord = top.pending[top.next++];
    const size_t mark = trace.size();
    World child = top.w;
    child.step(ord, trace);
    const auto [cid, fresh] = intern(child);
    succs[top.id].push_back(cid);
    if (!fresh) {
      trace.resize(mark);
      continue;
    }
    if (index.size() > limits.max_states) {
      over_limit = true;
      break;
    }

    // State-level invariant: never two lock owners at once.
    int owners = 0;
    for (const auto& p : child.processes()) {
      if (p.mx.phase == MutexPhase::InCS || p.mx.phase == MutexPhase::ReleaseSweep)
        ++owners;
    }
    if (owners > 1) record_violation("mutual-exclusion-state", "two processes own the lock");

    auto pending = child.enabled_ordinals();
    if (pending.empty()) {
      if (child.all_done()) {
        is_terminal[cid] = 1;
        ++rep.terminals;
        rep.terminal_fingerprint ^= splitmix64(fnv1a(child.state_key()));
        for (const auto& cr : terminal_checks(child, trace)) {
          if (!cr.passed) record_violation(cr.name, cr.detail);
        }
      } else {
        ++rep.deadlocks;
        record_violation("deadlock", "no process enabled but not all finished");
      }
      trace.resize(mark);
    } else {
      stack.push_back(Frame{std::move(child), cid, std::move(pending), 0, mark});
    }
  }

  rep.states_visited = index.size();
  rep.limit_exceeded = over_limit;

  if (!over_limit) {
    // A state from which no terminal state is reachable can spin forever.
    const auto total = static_cast<std::uint32_t>(index.size());
    std::vector<std::vector<std::uint32_t>> rev(total);
    for (std::uint32_t s = 0; s < total; ++s) {
      for (std::uint32_t t : succs[s]) rev[t].push_back(s);
    }
    std::vector<char> reaches(total, 0);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t s = 0; s < total; ++s) {
      if (is_terminal[s]) {
        reaches[s] = 1;
        queue.push_back(s);
      }
    }
    while (!queue.empty()) {
      const std::uint32_t t = queue.front();
      queue.pop_front();
      for (std::uint32_t s : rev[t]) {
        if (!reaches[s]) {
          reaches[s] = 1;
          queue.push_back(s);
        }
      }
    }
    for (std::uint32_t s = 0; s < total; ++s) {
      if (!reaches[s]) ++rep.livelock_states;
    }
  }
  return rep;
}

bool replay_matches(const Config& cfg, const std::vector<Permutation>& perms,
                    SchedulerKind kind, const std::string& jsonl) {
  // Structural sanity: the stored trace must plausibly belong to cfg. In a
  // complete run every process acts and every local index gets read, so the
  // maxima must match exactly.
  std::uint32_t max_ord = 0;
  std::uint32_t max_local = 0;
  size_t pos = 0;
  while (pos < jsonl.size()) {
    size_t eol = jsonl.find('\n', pos);
    if (eol == std::string::npos) eol = jsonl.size();
    const std::string line = jsonl.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("ordinal")) {
      throw ConfigError("malformed trace line");
    }
    max_ord = std::max(max_ord, j["ordinal"].get<std::uint32_t>());
    if (j.contains("local_index") && !j["local_index"].is_null()) {
      max_local = std::max(max_local, j["local_index"].get<std::uint32_t>());
    }
  }
  if (max_ord != cfg.n || max_local != cfg.m) {
    throw ConfigError("stored trace does not match the configuration");
  }
  RunResult rr = run(cfg, perms, kind);
  return trace_to_jsonl(rr.trace) == jsonl;
}

}  // namespace desanon
