#include "desanon/desa.hpp"

#include <algorithm>
#include <string>

#include "desanon/anonmem.hpp"
#include "desanon/errors.hpp"
#include "desanon/sim.hpp"
#include "labels.hpp"

namespace desanon {
namespace {

DesaPc after_phase1(const Config& cfg) {
  return cfg.variant == Variant::V1 ? DesaPc::Done : DesaPc::Acquire2;
}

StepResult result_for(DesaPc pc) {
  return pc == DesaPc::Done ? StepResult::Finished : StepResult::Running;
}

}  // namespace

RegisterValue instrumented_read(World& w, int ordinal, std::uint32_t x,
                                Trace& tr, StepDetail detail) {
  auto& p = w.process(ordinal);
  const StepTag tag = labels::mutex_tag(w.config().variant, p.epoch(), detail);
  const RegisterWord word = phys_read(w.memory(), ordinal, x, tr, tag);
  p.ct = std::max(p.ct, word.ct);
  return value_position(word.body);
}

void instrumented_write(World& w, int ordinal, std::uint32_t x,
                        const RegisterValue& v, Trace& tr, StepDetail detail) {
  auto& p = w.process(ordinal);
  if (v.has_value() && !(*v == p.id)) {
    throw ProtocolViolation("mutex write of a foreign identity");
  }
  const Config& cfg = w.config();
  RegisterBody body;
  if (p.map_inv.has_value() && cfg.v2_mode == V2Mode::Indexed) {
    // The writer knows the common name of this cell; keep it readable for
    // processes that have not computed their map yet.
    body = IndexedMutexVal{p.map_inv->apply(x), v};
  } else {
    body = MutexVal{v};
  }
  const StepTag tag = labels::mutex_tag(cfg.variant, p.epoch(), detail);
  phys_write_body(w.memory(), ordinal, x, std::move(body), p.ct, tr, tag);
}

StepResult desa_step(World& w, int ordinal, Trace& tr) {
  auto& p = w.process(ordinal);
  const Config& cfg = w.config();
  const std::uint32_t m = cfg.m;

  switch (p.pc) {
    case DesaPc::Acquire1:
    case DesaPc::Acquire2: {
      if (mutex_acquire_step(w, ordinal, tr) == MutexProgress::Entered) {
        p.pc = p.pc == DesaPc::Acquire1 ? DesaPc::Counter1 : DesaPc::Counter2;
      }
      return StepResult::Running;
    }
    case DesaPc::Counter1: {
      p.ct += cfg.mutation == Mutation::DoubleIncrement ? 2 : 1;
      p.last1 = p.ct == cfg.n;
      append_marker(tr, ordinal, EntryKind::Local,
                    StepTag{labels::counter_line(cfg.variant, 1),
                            StepDetail::CounterIncr, 1});
      p.pc = DesaPc::Release1;
      return StepResult::Running;
    }
    case DesaPc::Counter2: {
      p.ct += cfg.mutation == Mutation::DoubleIncrement ? 2 : 1;
      p.last2 = p.ct == 2 * cfg.n;
      append_marker(tr, ordinal, EntryKind::Local,
                    StepTag{labels::counter_line(cfg.variant, 2),
                            StepDetail::CounterIncr, 2});
      p.pc = DesaPc::Release2;
      return StepResult::Running;
    }
    case DesaPc::Release1: {
      if (mutex_release_step(w, ordinal, tr) == MutexProgress::Released) {
        if (p.last1) {
          if (cfg.mutation == Mutation::SkipDesaBroadcast) {
            p.map = Permutation::identity(m);
            p.map_inv = Permutation::identity(m);
            p.pc = after_phase1(cfg);
            return result_for(p.pc);
          }
          p.pc = DesaPc::Broadcast;
          p.k = 1;
        } else {
          p.pc = DesaPc::MapScan;
          p.scan_k = 1;
          p.sm.assign(m, RegisterWord{});
        }
      }
      return StepResult::Running;
    }
    case DesaPc::Broadcast: {
      phys_write_body(w.memory(), ordinal, p.k, DesaVal{p.k}, p.ct, tr,
                      StepTag{labels::broadcast_line(cfg.variant),
                              StepDetail::DesaBroadcast, 1});
      if (p.k == m) {
        p.map = Permutation::identity(m);
        p.map_inv = Permutation::identity(m);
        p.pc = after_phase1(cfg);
        return result_for(p.pc);
      }
      ++p.k;
      return StepResult::Running;
    }
    case DesaPc::MapScan: {
      const RegisterWord word =
          phys_read(w.memory(), ordinal, p.scan_k, tr,
                    StepTag{labels::map_scan_line(cfg.variant),
                            StepDetail::MapScan, 1});
      if (cfg.mutation == Mutation::ScanUpdatesCt) p.ct = std::max(p.ct, word.ct);
      p.sm[p.scan_k - 1] = word;
      if (p.scan_k < m) {
        ++p.scan_k;
        return StepResult::Running;
      }
      const bool all_indexed =
          std::all_of(p.sm.begin(), p.sm.end(), [](const RegisterWord& e) {
            return carried_index(e.body).has_value();
          });
      if (all_indexed) {
        p.map = compute_map_from_snapshot(p.sm);
        p.map_inv = p.map->inverse();
        p.pc = after_phase1(cfg);
        return result_for(p.pc);
      }
      p.scan_k = 1;
      return StepResult::Running;
    }
    case DesaPc::Release2: {
      if (mutex_release_step(w, ordinal, tr) == MutexProgress::Released) {
        if (p.last2) {
          p.pc = DesaPc::BitBroadcast;
          p.k = 1;
        } else {
          p.pc = DesaPc::BitScan;
          p.scan_k = 1;
          p.bits.assign(m, 0);
        }
      }
      return StepResult::Running;
    }
    case DesaPc::BitBroadcast: {
      phys_write_bit(w.memory(), ordinal, p.k, 1, tr,
                     StepTag{"BITDESA-15", StepDetail::BitWrite, 2});
      if (p.k == m) {
        if (cfg.mutation == Mutation::BitReset) {
          p.pc = DesaPc::MutantBitReset;
          return StepResult::Running;
        }
        p.pc = DesaPc::Done;
        return StepResult::Finished;
      }
      ++p.k;
      return StepResult::Running;
    }
    case DesaPc::MutantBitReset: {
      // Mutant: clears one completion bit, bypassing the monotonicity guard.
      harness_force_bit(w.memory(), ordinal, 1, 0, tr,
                        StepTag{"BITDESA-15", StepDetail::BitWrite, 2});
      p.pc = DesaPc::Done;
      return StepResult::Finished;
    }
    case DesaPc::BitScan: {
      const RegisterWord word =
          phys_read(w.memory(), ordinal, p.scan_k, tr,
                    StepTag{"BITDESA-16", StepDetail::BitScan, 2});
      if (cfg.mutation == Mutation::ScanUpdatesCt) p.ct = std::max(p.ct, word.ct);
      p.bits[p.scan_k - 1] = word.bit;
      if (p.scan_k < m) {
        ++p.scan_k;
        return StepResult::Running;
      }
      const bool any_set =
          std::any_of(p.bits.begin(), p.bits.end(), [](std::uint8_t b) { return b != 0; });
      if (any_set) {
        p.pc = DesaPc::Done;
        return StepResult::Finished;
      }
      p.scan_k = 1;
      return StepResult::Running;
    }
    case DesaPc::Done:
      throw ProtocolViolation("step on a finished process");
  }
  throw ProtocolViolation("corrupt protocol state");
}

Permutation compute_map_from_snapshot(const std::vector<RegisterWord>& sm) {
  const std::uint32_t m = static_cast<std::uint32_t>(sm.size());
  std::vector<std::uint32_t> table(m, 0);  // table[y-1] = x
  for (std::uint32_t x = 1; x <= m; ++x) {
    const auto y = carried_index(sm[x - 1].body);
    if (!y.has_value()) {
      throw ProtocolViolation("snapshot entry " + std::to_string(x) +
                              " carries no index");
    }
    if (*y < 1 || *y > m) {
      throw ProtocolViolation("snapshot index out of range");
    }
    if (table[*y - 1] != 0) {
      throw ProtocolViolation("duplicate index " + std::to_string(*y) +
                              " in snapshot");
    }
    table[*y - 1] = x;
  }
  return Permutation::from_table(std::move(table));
}

void appl_write(World& w, int ordinal, std::uint32_t y, std::string payload,
                Trace& tr) {
  auto& p = w.process(ordinal);
  if (!p.map.has_value()) {
    throw ProtocolViolation("application write before the map is computed");
  }
  if (y < 1 || y > w.m()) throw ConfigError("common index out of range");
  phys_write_body(w.memory(), ordinal, p.map->apply(y),
                  ApplVal{y, std::move(payload)}, p.ct, tr,
                  StepTag{"APPL-WRITE", StepDetail::ApplWrite, p.epoch()});
}

std::optional<std::string> appl_read(World& w, int ordinal, std::uint32_t y,
                                     Trace& tr) {
  auto& p = w.process(ordinal);
  if (!p.map.has_value()) {
    throw ProtocolViolation("application read before the map is computed");
  }
  if (y < 1 || y > w.m()) throw ConfigError("common index out of range");
  const RegisterWord word =
      phys_read(w.memory(), ordinal, p.map->apply(y), tr,
                StepTag{"APPL-READ", StepDetail::ApplRead, p.epoch()});
  if (const auto* av = std::get_if<ApplVal>(&word.body)) return av->payload;
  return std::nullopt;
}

}  // namespace desanon
