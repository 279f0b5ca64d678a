#include "desanon/mutex.hpp"

#include "desanon/desa.hpp"
#include "desanon/errors.hpp"
#include "desanon/sim.hpp"
#include "labels.hpp"

namespace desanon {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool eligible(const Arbiter& arb, int ordinal) {
  return !arb.holder.has_value() && !arb.queue.empty() &&
         arb.queue.front() == ordinal;
}

void claim(Arbiter& arb, int ordinal) {
  arb.holder = ordinal;
  arb.queue.erase(arb.queue.begin());
}

// Hidden entry test of the reference mutex: entry is declared only when
// every cell really holds the entrant's identity. The search walks the
// entrant's own local index order, so relabeling physical cells cannot
// change which cell gets repaired.
std::uint32_t first_foreign_local(const World& w, int ordinal) {
  const auto& p = w.process(ordinal);
  const auto& mem = w.memory();
  for (std::uint32_t x = 1; x <= mem.m(); ++x) {
    const RegisterValue v =
        value_position(mem.cell(mem.translate(ordinal, x)).body);
    if (!(v.has_value() && *v == p.id)) return x;
  }
  return 0;
}

MutexProgress enter_cs(World& w, int ordinal, Trace& tr) {
  auto& p = w.process(ordinal);
  p.mx.phase = MutexPhase::InCS;
  append_marker(tr, ordinal, EntryKind::CsEnter,
                labels::mutex_tag(w.config().variant, p.epoch(),
                                  StepDetail::CsEnterMark));
  return MutexProgress::Entered;
}

MutexProgress finish_release(World& w, int ordinal, Trace& tr) {
  auto& p = w.process(ordinal);
  w.arbiter().holder.reset();
  p.mx.phase = MutexPhase::Idle;
  p.mx.k = 0;
  append_marker(tr, ordinal, EntryKind::CsExit,
                labels::mutex_tag(w.config().variant, p.epoch(),
                                  StepDetail::CsExitMark));
  return MutexProgress::Released;
}

}  // namespace

std::uint32_t contender_target(const Config& cfg, const ProcessId& id,
                               int ordinal, int epoch) {
  if (cfg.mutation == Mutation::IdOrderBranch) {
    // Mutant: derives the target from identity internals, which a symmetric
    // algorithm must never do.
    return 1 + static_cast<std::uint32_t>(IdAccess::token(id) % cfg.m);
  }
  if (cfg.contender_policy == ContenderPolicy::FixedIndex) return 1;
  const std::uint64_t h = splitmix64(
      cfg.seed ^ splitmix64(static_cast<std::uint64_t>(ordinal) * 0x9e3779b9ULL +
                            static_cast<std::uint64_t>(epoch)));
  return 1 + static_cast<std::uint32_t>(h % cfg.m);
}

MutexProgress mutex_acquire_step(World& w, int ordinal, Trace& tr) {
  auto& p = w.process(ordinal);
  auto& mx = p.mx;
  auto& arb = w.arbiter();
  const Config& cfg = w.config();
  const std::uint32_t m = cfg.m;

  switch (mx.phase) {
    case MutexPhase::Idle: {
      const std::uint8_t allowed = cfg.variant == Variant::V2 ? 2 : 1;
      if (mx.acquires_done >= allowed) {
        throw ProtocolViolation("acquire invoked beyond the one-shot budget");
      }
      ++mx.acquires_done;
      mx.writes_this_epoch = 0;
      arb.queue.push_back(ordinal);  // arrival order fixed by this first step
      mx.phase = MutexPhase::AcquireScan;
      mx.k = 1;
      [[fallthrough]];
    }
    case MutexPhase::AcquireScan: {
      instrumented_read(w, ordinal, mx.k, tr, StepDetail::AcqScan);
      if (mx.k < m) {
        ++mx.k;
        return MutexProgress::Running;
      }
      if (eligible(arb, ordinal)) {
        claim(arb, ordinal);
        mx.phase = MutexPhase::ConfirmScan;
        mx.k = 1;
      } else {
        mx.phase = MutexPhase::ContendWrite;
      }
      return MutexProgress::Running;
    }
    case MutexPhase::ContendWrite: {
      const std::uint32_t x = contender_target(cfg, p.id, ordinal, p.epoch());
      instrumented_write(w, ordinal, x, RegisterValue{p.id}, tr,
                         StepDetail::AcqContend);
      ++mx.writes_this_epoch;
      mx.phase = MutexPhase::Spin;
      return MutexProgress::Running;
    }
    case MutexPhase::Spin: {
      instrumented_read(w, ordinal, 1, tr, StepDetail::AcqSpin);
      if (eligible(arb, ordinal)) {
        claim(arb, ordinal);
        mx.phase = MutexPhase::ConfirmScan;
        mx.k = 1;
      }
      return MutexProgress::Running;
    }
    case MutexPhase::ConfirmScan: {
      // Re-read every register after winning arbitration. The predecessor's
      // release left at least m-(n-1) cells carrying the current counter and
      // nothing can erase all of them, so this pass always harvests it.
      instrumented_read(w, ordinal, mx.k, tr, StepDetail::AcqConfirm);
      if (mx.k < m) {
        ++mx.k;
        return MutexProgress::Running;
      }
      mx.phase = MutexPhase::EnterWrite;
      mx.k = 1;
      return MutexProgress::Running;
    }
    case MutexPhase::EnterWrite: {
      instrumented_write(w, ordinal, mx.k, RegisterValue{p.id}, tr,
                         StepDetail::AcqEnter);
      if (mx.k < m) {
        ++mx.k;
        return MutexProgress::Running;
      }
      if (first_foreign_local(w, ordinal) == 0) return enter_cs(w, ordinal, tr);
      mx.phase = MutexPhase::EnterFix;
      return MutexProgress::Running;
    }
    case MutexPhase::EnterFix: {
      // A waiting process overwrote one of our cells; rewrite it. Each other
      // process posts at most one write per acquire, so this terminates.
      const std::uint32_t x = first_foreign_local(w, ordinal);
      instrumented_write(w, ordinal, x, RegisterValue{p.id}, tr,
                         StepDetail::AcqFix);
      if (first_foreign_local(w, ordinal) == 0) return enter_cs(w, ordinal, tr);
      return MutexProgress::Running;
    }
    case MutexPhase::InCS:
    case MutexPhase::ReleaseSweep:
      throw ProtocolViolation("acquire while holding the critical section");
  }
  throw ProtocolViolation("corrupt mutex phase");
}

MutexProgress mutex_release_step(World& w, int ordinal, Trace& tr) {
  auto& p = w.process(ordinal);
  auto& mx = p.mx;
  const Config& cfg = w.config();
  const std::uint32_t m = cfg.m;

  switch (mx.phase) {
    case MutexPhase::InCS: {
      if (w.arbiter().holder != std::optional<int>(ordinal)) {
        throw ProtocolViolation("release by a process that is not the holder");
      }
      mx.phase = MutexPhase::ReleaseSweep;
      mx.k = 1;
      mx.pending_write = false;
      [[fallthrough]];
    }
    case MutexPhase::ReleaseSweep: {
      if (mx.pending_write) {
        instrumented_write(w, ordinal, mx.k, kBottom, tr, StepDetail::RelWrite);
        mx.pending_write = false;
        if (mx.k == m) return finish_release(w, ordinal, tr);
        ++mx.k;
        return MutexProgress::Running;
      }
      const RegisterValue v =
          instrumented_read(w, ordinal, mx.k, tr, StepDetail::RelRead);
      if (v.has_value() && *v == p.id &&
          cfg.mutation != Mutation::SkipBottomSweep) {
        mx.pending_write = true;
        return MutexProgress::Running;
      }
      if (mx.k == m) return finish_release(w, ordinal, tr);
      ++mx.k;
      return MutexProgress::Running;
    }
    default:
      throw ProtocolViolation("release without holding the critical section");
  }
}

}  // namespace desanon
