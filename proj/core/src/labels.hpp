#pragma once

// Protocol line labels used in traces. The plain variant uses DESA-xx lines,
// the one-bit variant BITDESA-xx; mutex-internal accesses append a sub-phase
// suffix to the acquire/release line they serve.

#include <string>

#include "desanon/config.hpp"
#include "desanon/trace.hpp"

namespace desanon::labels {

inline std::string acquire_line(Variant v, int epoch) {
  if (epoch == 2) return "BITDESA-10";
  return v == Variant::V1 ? "DESA-01" : "BITDESA-01";
}

inline std::string release_line(Variant v, int epoch) {
  if (epoch == 2) return "BITDESA-13";
  return v == Variant::V1 ? "DESA-04" : "BITDESA-04";
}

inline std::string counter_line(Variant v, int epoch) {
  if (epoch == 2) return "BITDESA-11";
  return v == Variant::V1 ? "DESA-02" : "BITDESA-02";
}

inline std::string broadcast_line(Variant v) {
  return v == Variant::V1 ? "DESA-06" : "BITDESA-06";
}

inline std::string map_scan_line(Variant v) {
  return v == Variant::V1 ? "DESA-07" : "BITDESA-07";
}

inline std::string mutex_suffix(StepDetail d) {
  switch (d) {
    case StepDetail::AcqScan: return "/SCAN";
    case StepDetail::AcqConfirm: return "/CONFIRM";
    case StepDetail::AcqContend: return "/CONTEND";
    case StepDetail::AcqSpin: return "/SPIN";
    case StepDetail::AcqEnter: return "/ENTER";
    case StepDetail::AcqFix: return "/FIX";
    case StepDetail::RelRead: return "/SWEEP-READ";
    case StepDetail::RelWrite: return "/SWEEP-WRITE";
    default: return "";
  }
}

// Accesses inside acquire/release go through the counter-piggybacked
// read/write operations; their labels carry the operation id as well.
inline std::string rw_op_suffix(StepDetail d) {
  switch (d) {
    case StepDetail::AcqScan:
    case StepDetail::AcqConfirm:
    case StepDetail::AcqSpin:
    case StepDetail::RelRead:
      return "/MUTEX-RW-01";
    case StepDetail::AcqContend:
    case StepDetail::AcqEnter:
    case StepDetail::AcqFix:
    case StepDetail::RelWrite:
      return "/MUTEX-RW-04";
    default:
      return "";
  }
}

inline StepTag mutex_tag(Variant v, int epoch, StepDetail d) {
  const bool release = d == StepDetail::RelRead || d == StepDetail::RelWrite ||
                       d == StepDetail::CsExitMark;
  std::string line = release ? release_line(v, epoch) : acquire_line(v, epoch);
  return StepTag{line + mutex_suffix(d) + rw_op_suffix(d), d, epoch};
}

}  // namespace desanon::labels
