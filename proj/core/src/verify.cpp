#include "desanon/verify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

namespace desanon {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool holds_id(const RegisterWord& w, const ProcessId& id) {
  const RegisterValue v = value_position(w.body);
  return v.has_value() && *v == id;
}

bool is_mutex_write(StepDetail d) {
  return d == StepDetail::AcqContend || d == StepDetail::AcqEnter ||
         d == StepDetail::AcqFix || d == StepDetail::RelWrite;
}

bool is_acquire_access(StepDetail d) {
  return d == StepDetail::AcqScan || d == StepDetail::AcqConfirm ||
         d == StepDetail::AcqContend || d == StepDetail::AcqSpin ||
         d == StepDetail::AcqEnter || d == StepDetail::AcqFix;
}

bool is_release_access(StepDetail d) {
  return d == StepDetail::RelRead || d == StepDetail::RelWrite;
}

std::string at_step(const TraceEntry& e) {
  return " at step " + std::to_string(e.step) + " (" + e.pc + ")";
}

// Single replay pass evaluating the whole mutex contract.
struct ContractEval {
  bool mutual_exclusion = true;
  bool deadlock_freedom = true;
  bool mutex1 = true;
  bool mutex2 = true;
  bool mutex3 = true;
  bool mutex4 = true;
  std::string detail;
};

ContractEval eval_contract(const World& w, const Trace& tr) {
  ContractEval ev;
  const std::uint32_t m = w.m();
  const std::uint32_t n = w.n();
  std::vector<RegisterWord> cells(m);

  auto fail = [&](bool& flag, const std::string& d) {
    flag = false;
    if (ev.detail.empty()) ev.detail = d;
  };

  std::set<int> in_cs;
  std::set<int> in_acquire;
  int coverage_holder = 0;  // holder between CS entry and its first release access
  std::map<int, int> writes_in_interval;
  std::map<std::pair<int, int>, std::set<std::uint32_t>> acq_reads;
  std::map<int, std::set<int>> entered_epochs;  // epoch -> ordinals

  auto own_count = [&](int ordinal) {
    const ProcessId& id = w.process(ordinal).id;
    std::uint32_t c = 0;
    for (const auto& cell : cells) {
      if (holds_id(cell, id)) ++c;
    }
    return c;
  };

  for (const auto& e : tr) {
    switch (e.kind) {
      case EntryKind::Read:
        if (is_acquire_access(e.detail)) {
          in_acquire.insert(e.ordinal);
          if (e.detail == StepDetail::AcqScan ||
              e.detail == StepDetail::AcqConfirm ||
              e.detail == StepDetail::AcqSpin) {
            acq_reads[{e.ordinal, e.epoch}].insert(e.local_index);
          }
        }
        if (is_release_access(e.detail) && coverage_holder == e.ordinal) {
          coverage_holder = 0;  // the covered window ends when release begins
        }
        break;
      case EntryKind::Write: {
        if (is_acquire_access(e.detail)) in_acquire.insert(e.ordinal);
        if (is_release_access(e.detail) && coverage_holder == e.ordinal) {
          coverage_holder = 0;
        }
        cells[e.physical_index - 1] = *e.after;
        if (is_mutex_write(e.detail)) {
          const RegisterValue v = value_position(e.after->body);
          if (v.has_value() && !(*v == w.process(e.ordinal).id)) {
            fail(ev.mutex1, "mutex write of a value that is neither the writer's identity nor BOTTOM" + at_step(e));
          }
        }
        for (int h : in_cs) {
          if (h != e.ordinal && ++writes_in_interval[e.ordinal] > 1) {
            fail(ev.mutex4, "process " + std::to_string(e.ordinal) +
                                " wrote twice inside a critical section interval" + at_step(e));
          }
        }
        break;
      }
      case EntryKind::CsEnter: {
        if (!in_cs.empty()) {
          fail(ev.mutual_exclusion, "critical section entered while occupied" + at_step(e));
        }
        const auto& reads = acq_reads[{e.ordinal, e.epoch}];
        bool covered = true;
        for (std::uint32_t x = 1; x <= m; ++x) {
          if (!reads.count(x)) {
            covered = false;
            break;
          }
        }
        if (!covered) {
          fail(ev.mutex2, "process entered without reading every register" + at_step(e));
        }
        if (own_count(e.ordinal) != m) {
          fail(ev.mutex3, "not every register held the entrant's identity" + at_step(e));
        }
        in_cs.insert(e.ordinal);
        in_acquire.erase(e.ordinal);
        coverage_holder = e.ordinal;
        writes_in_interval.clear();
        entered_epochs[e.epoch].insert(e.ordinal);
        break;
      }
      case EntryKind::CsExit: {
        if (own_count(e.ordinal) != 0) {
          fail(ev.mutex4, "a register still held the releaser's identity after release" + at_step(e));
        }
        in_cs.erase(e.ordinal);
        if (coverage_holder == e.ordinal) coverage_holder = 0;
        break;
      }
      case EntryKind::Local:
        break;
    }

    if (coverage_holder != 0) {
      std::uint32_t waiting = 0;
      for (int ord : in_acquire) {
        if (ord != coverage_holder) ++waiting;
      }
      if (own_count(coverage_holder) + waiting < m) {
        fail(ev.mutex4, "fewer than m-x registers held the holder's identity" + at_step(e));
      }
    }
  }

  const int epochs = w.config().variant == Variant::V2 ? 2 : 1;
  for (int ep = 1; ep <= epochs; ++ep) {
    if (entered_epochs[ep].size() != n) {
      fail(ev.deadlock_freedom, "not every process reached the critical section in phase " + std::to_string(ep));
    }
  }
  return ev;
}

}  // namespace

CheckResult check_safety(const World& w) {
  CheckResult r{"safety", true, ""};
  for (std::uint32_t i = 1; i <= w.n(); ++i) {
    const auto& p = w.process(static_cast<int>(i));
    if (p.pc != DesaPc::Done) {
      return {"safety", false, "process " + std::to_string(i) + " did not finish"};
    }
    if (!p.map.has_value()) {
      return {"safety", false, "process " + std::to_string(i) + " has no map"};
    }
    if (p.map->size() != w.m()) {
      return {"safety", false, "map of process " + std::to_string(i) + " has wrong size"};
    }
  }
  for (std::uint32_t y = 1; y <= w.m(); ++y) {
    const std::uint32_t phys0 =
        w.memory().perm(1).apply(w.process(1).map->apply(y));
    for (std::uint32_t i = 2; i <= w.n(); ++i) {
      const auto& p = w.process(static_cast<int>(i));
      const std::uint32_t phys =
          w.memory().perm(static_cast<int>(i)).apply(p.map->apply(y));
      if (phys != phys0) {
        return {"safety", false,
                "common name " + std::to_string(y) + " resolves to cell " +
                    std::to_string(phys0) + " for process 1 but cell " +
                    std::to_string(phys) + " for process " + std::to_string(i)};
      }
    }
  }
  return r;
}

CheckResult check_liveness(const World& w, bool completed) {
  if (!completed) return {"liveness", false, "step budget exhausted before completion"};
  for (std::uint32_t i = 1; i <= w.n(); ++i) {
    if (w.process(static_cast<int>(i)).pc != DesaPc::Done) {
      return {"liveness", false, "process " + std::to_string(i) + " not finished"};
    }
  }
  return {"liveness", true, ""};
}

CheckResult check_lemma1(const World& w, const Trace& tr) {
  const std::uint32_t m = w.m();
  const std::uint32_t n = w.n();
  struct LastWrite {
    int ordinal = 0;
    StepDetail detail = StepDetail::AcqScan;
    int epoch = 0;
  };
  std::vector<RegisterWord> cells(m);
  std::vector<LastWrite> last(m);
  int k1 = 0;
  std::map<int, int> entry_index;

  for (const auto& e : tr) {
    if (e.kind == EntryKind::Write) {
      cells[e.physical_index - 1] = *e.after;
      last[e.physical_index - 1] = {e.ordinal, e.detail, e.epoch};
    } else if (e.kind == EntryKind::CsEnter && e.epoch == 1) {
      entry_index[e.ordinal] = ++k1;
    } else if (e.kind == EntryKind::CsExit && e.epoch == 1) {
      const int k = entry_index[e.ordinal];
      std::uint32_t stamped = 0;
      for (std::uint32_t c = 0; c < m; ++c) {
        if (last[c].ordinal == e.ordinal && last[c].detail == StepDetail::RelWrite &&
            last[c].epoch == 1 && cells[c].ct == static_cast<std::uint32_t>(k) &&
            !value_position(cells[c].body).has_value()) {
          ++stamped;
        }
      }
      if (stamped + (n - 1) < m) {
        return {"lemma1", false,
                "release of entrant " + std::to_string(k) + " left only " +
                    std::to_string(stamped) + " cells stamped " + std::to_string(k) +
                    ", need at least " + std::to_string(m - (n - 1)) + at_step(e)};
      }
    }
  }
  if (k1 == 0) return {"lemma1", false, "no critical section entries in trace"};
  return {"lemma1", true, ""};
}

CheckResult check_counter_sequence(const World& w, const Trace& tr) {
  const std::uint32_t n = w.n();
  std::vector<std::uint32_t> inc1;
  std::vector<std::uint32_t> inc2;
  std::map<int, std::uint32_t> prev;
  for (const auto& e : tr) {
    auto& p = prev[e.ordinal];
    if (e.ct_after < p) {
      return {"counter-sequence", false,
              "counter of process " + std::to_string(e.ordinal) + " decreased" + at_step(e)};
    }
    p = e.ct_after;
    if (e.detail == StepDetail::CounterIncr) {
      (e.epoch == 1 ? inc1 : inc2).push_back(e.ct_after);
    }
  }
  for (std::uint32_t k = 0; k < inc1.size(); ++k) {
    if (inc1[k] != k + 1) {
      return {"counter-sequence", false,
              "phase-1 increment " + std::to_string(k + 1) + " produced " +
                  std::to_string(inc1[k])};
    }
  }
  if (inc1.size() != n) {
    return {"counter-sequence", false,
            "expected " + std::to_string(n) + " phase-1 increments, saw " +
                std::to_string(inc1.size())};
  }
  if (w.config().variant == Variant::V2) {
    for (std::uint32_t k = 0; k < inc2.size(); ++k) {
      if (inc2[k] != n + k + 1) {
        return {"counter-sequence", false,
                "phase-2 increment " + std::to_string(k + 1) + " produced " +
                    std::to_string(inc2[k])};
      }
    }
    if (inc2.size() != n) {
      return {"counter-sequence", false,
              "expected " + std::to_string(n) + " phase-2 increments, saw " +
                  std::to_string(inc2.size())};
    }
  } else {
    // Final counters of the plain variant form exactly the set {1..n}.
    std::vector<std::uint32_t> finals;
    for (std::uint32_t i = 1; i <= n; ++i) finals.push_back(w.process(static_cast<int>(i)).ct);
    std::sort(finals.begin(), finals.end());
    for (std::uint32_t k = 0; k < n; ++k) {
      if (finals[k] != k + 1) {
        return {"counter-sequence", false,
                "final counters are not the set {1.." + std::to_string(n) + "}"};
      }
    }
  }
  return {"counter-sequence", true, ""};
}

bool mutual_exclusion(const World& w, const Trace& tr) { return eval_contract(w, tr).mutual_exclusion; }
bool deadlock_freedom(const World& w, const Trace& tr) { return eval_contract(w, tr).deadlock_freedom; }
bool mutex1_writes_id_or_bottom(const World& w, const Trace& tr) { return eval_contract(w, tr).mutex1; }
bool mutex2_reads_all_before_cs(const World& w, const Trace& tr) { return eval_contract(w, tr).mutex2; }
bool mutex3_all_cells_on_entry(const World& w, const Trace& tr) { return eval_contract(w, tr).mutex3; }
bool mutex4_at_most_one_write(const World& w, const Trace& tr) { return eval_contract(w, tr).mutex4; }

CheckResult check_mutex_contract(const World& w, const Trace& tr) {
  const ContractEval ev = eval_contract(w, tr);
  const bool ok = ev.mutual_exclusion && ev.deadlock_freedom && ev.mutex1 &&
                  ev.mutex2 && ev.mutex3 && ev.mutex4;
  return {"mutex-contract", ok, ok ? "" : ev.detail};
}

CheckResult check_winner(const World& w, const Trace& tr) {
  const std::uint32_t n = w.n();
  const std::uint32_t m = w.m();
  int winners1 = 0;
  int winners2 = 0;
  int winner1_ord = 0;
  int winner2_ord = 0;
  for (std::uint32_t i = 1; i <= n; ++i) {
    const auto& p = w.process(static_cast<int>(i));
    if (p.last1) {
      ++winners1;
      winner1_ord = static_cast<int>(i);
    }
    if (p.last2) {
      ++winners2;
      winner2_ord = static_cast<int>(i);
    }
    if (p.pc != DesaPc::Done) {
      return {"winner", false, "process " + std::to_string(i) + " did not finish"};
    }
    if (!p.map.has_value()) {
      return {"winner", false, "process " + std::to_string(i) + " has no map"};
    }
  }
  if (winners1 != 1) {
    return {"winner", false, std::to_string(winners1) + " processes ended the first phase as winner"};
  }
  if (!(w.process(winner1_ord).map == Permutation::identity(m))) {
    return {"winner", false, "the first-phase winner's map is not the identity"};
  }
  if (w.config().variant == Variant::V2) {
    if (winners2 != 1) {
      return {"winner", false, std::to_string(winners2) + " processes ended the second phase as winner"};
    }
    for (std::uint32_t c = 1; c <= m; ++c) {
      if (w.memory().cell(c).bit != 1) {
        return {"winner", false, "completion bit of cell " + std::to_string(c) + " is not set"};
      }
    }
    std::uint64_t first_bit_write = 0;
    std::map<int, std::uint64_t> last_bit_scan;
    for (const auto& e : tr) {
      if (e.kind == EntryKind::Write && e.before.has_value() && e.after.has_value() &&
          e.before->bit > e.after->bit) {
        return {"winner", false, "completion bit decayed" + at_step(e)};
      }
      if (e.detail == StepDetail::BitWrite && first_bit_write == 0) first_bit_write = e.step;
      if (e.detail == StepDetail::BitScan) last_bit_scan[e.ordinal] = e.step;
    }
    for (std::uint32_t i = 1; i <= n; ++i) {
      const auto& p = w.process(static_cast<int>(i));
      if (static_cast<int>(i) == winner2_ord) continue;
      const auto it = last_bit_scan.find(static_cast<int>(i));
      if (it == last_bit_scan.end()) {
        return {"winner", false, "process " + std::to_string(i) + " never scanned the completion bits"};
      }
      if (first_bit_write == 0 || it->second <= first_bit_write) {
        return {"winner", false,
                "process " + std::to_string(i) + " left the bit-scan loop before the first bit write"};
      }
      (void)p;
    }
  }
  return {"winner", true, ""};
}

namespace {

RegisterValue map_value(const RegisterValue& v,
                        const std::map<std::uint64_t, std::uint64_t>& tok) {
  if (!v.has_value()) return kBottom;
  return RegisterValue{IdAccess::make(tok.at(IdAccess::token(*v)))};
}

RegisterBody map_body(const RegisterBody& b,
                      const std::map<std::uint64_t, std::uint64_t>& tok) {
  if (const auto* mv = std::get_if<MutexVal>(&b)) return MutexVal{map_value(mv->val, tok)};
  if (const auto* iv = std::get_if<IndexedMutexVal>(&b)) {
    return IndexedMutexVal{iv->y, map_value(iv->val, tok)};
  }
  return b;
}

bool words_equal_renamed(const std::optional<RegisterWord>& a,
                         const std::optional<RegisterWord>& b,
                         const std::map<std::uint64_t, std::uint64_t>& tok) {
  if (a.has_value() != b.has_value()) return false;
  if (!a.has_value()) return true;
  RegisterWord expect = *a;
  expect.body = map_body(a->body, tok);
  return expect == *b;
}

}  // namespace

CheckResult check_equivariance(const Config& cfg,
                               const std::vector<Permutation>& perms,
                               SchedulerKind kind, std::uint64_t pair_seed) {
  RunResult base = run(cfg, perms, kind);
  std::mt19937_64 rng(splitmix64(pair_seed ^ 0x517cc1b727220a95ULL));

  // (a) rename identities through a random bijection
  std::vector<std::uint64_t> tokens;
  std::set<std::uint64_t> used;
  while (tokens.size() < cfg.n) {
    const std::uint64_t t = rng();
    if (t != 0 && used.insert(t).second) tokens.push_back(t);
  }
  std::map<std::uint64_t, std::uint64_t> tok;
  for (std::uint32_t i = 0; i < cfg.n; ++i) tok[i + 1] = tokens[i];
  RunResult renamed = run(cfg, perms, kind, tokens);
  if (renamed.trace.size() != base.trace.size()) {
    return {"equivariance", false, "identity renaming changed the trace length"};
  }
  for (size_t i = 0; i < base.trace.size(); ++i) {
    const auto& a = base.trace[i];
    const auto& b = renamed.trace[i];
    if (a.step != b.step || a.ordinal != b.ordinal || a.kind != b.kind ||
        a.local_index != b.local_index || a.physical_index != b.physical_index ||
        a.pc != b.pc || !words_equal_renamed(a.before, b.before, tok) ||
        !words_equal_renamed(a.after, b.after, tok)) {
      return {"equivariance", false,
              "identity renaming changed the trace" + at_step(a)};
    }
  }

  // (b) relabel physical cells through a common permutation
  const Permutation g = Permutation::random(cfg.m, rng);
  std::vector<Permutation> relabeled;
  relabeled.reserve(perms.size());
  for (const auto& f : perms) relabeled.push_back(compose(g, f));
  RunResult relab = run(cfg, relabeled, kind);
  if (relab.trace.size() != base.trace.size()) {
    return {"equivariance", false, "register relabeling changed the trace length"};
  }
  for (size_t i = 0; i < base.trace.size(); ++i) {
    const auto& a = base.trace[i];
    const auto& b = relab.trace[i];
    const std::uint32_t expect_phys =
        a.physical_index == 0 ? 0 : g.apply(a.physical_index);
    if (a.step != b.step || a.ordinal != b.ordinal || a.kind != b.kind ||
        a.local_index != b.local_index || expect_phys != b.physical_index ||
        a.pc != b.pc || a.before != b.before || a.after != b.after) {
      return {"equivariance", false,
              "register relabeling changed the trace" + at_step(a)};
    }
  }
  return {"equivariance", true, ""};
}

std::vector<CheckResult> standard_checks(const World& w, const Trace& tr,
                                         bool completed) {
  return {check_safety(w),
          check_liveness(w, completed),
          check_lemma1(w, tr),
          check_counter_sequence(w, tr),
          check_mutex_contract(w, tr),
          check_winner(w, tr)};
}

}  // namespace desanon
