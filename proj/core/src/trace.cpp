#include "desanon/trace.hpp"

namespace desanon {

void append_access(Trace& tr, int ordinal, EntryKind kind, std::uint32_t local,
                   std::uint32_t phys, const RegisterWord& before,
                   const RegisterWord& after, const StepTag& tag) {
  TraceEntry e;
  e.step = tr.size() + 1;
  e.ordinal = ordinal;
  e.kind = kind;
  e.local_index = local;
  e.physical_index = phys;
  e.before = before;
  e.after = after;
  e.pc = tag.pc;
  e.detail = tag.detail;
  e.epoch = tag.epoch;
  tr.push_back(std::move(e));
}

void append_marker(Trace& tr, int ordinal, EntryKind kind, const StepTag& tag) {
  TraceEntry e;
  e.step = tr.size() + 1;
  e.ordinal = ordinal;
  e.kind = kind;
  e.pc = tag.pc;
  e.detail = tag.detail;
  e.epoch = tag.epoch;
  tr.push_back(std::move(e));
}

}  // namespace desanon
