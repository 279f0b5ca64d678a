#include "desanon/json_io.hpp"

#include <fstream>
#include <sstream>

#include "desanon/errors.hpp"
#include "desanon/ids.hpp"

#include <json.hpp>

namespace desanon {
namespace {

using ojson = nlohmann::ordered_json;

ojson word_obj(const RegisterWord& w) {
  ojson body;
  if (const auto* mv = std::get_if<MutexVal>(&w.body)) {
    body["tag"] = "MUTEX";
    if (mv->val.has_value()) {
      body["val"] = IdAccess::token(*mv->val);
    } else {
      body["val"] = nullptr;
    }
  } else if (const auto* dv = std::get_if<DesaVal>(&w.body)) {
    body["tag"] = "DESA";
    body["y"] = dv->y;
  } else if (const auto* iv = std::get_if<IndexedMutexVal>(&w.body)) {
    body["tag"] = "IMUTEX";
    body["y"] = iv->y;
    if (iv->val.has_value()) {
      body["val"] = IdAccess::token(*iv->val);
    } else {
      body["val"] = nullptr;
    }
  } else if (const auto* av = std::get_if<ApplVal>(&w.body)) {
    body["tag"] = "APPL";
    body["y"] = av->y;
    body["payload"] = av->payload;
  }
  ojson j;
  j["bit"] = static_cast<int>(w.bit);
  j["ct"] = w.ct;
  j["body"] = std::move(body);
  return j;
}

const char* kind_str(EntryKind k) {
  switch (k) {
    case EntryKind::Read: return "READ";
    case EntryKind::Write: return "WRITE";
    case EntryKind::CsEnter: return "CS_ENTER";
    case EntryKind::CsExit: return "CS_EXIT";
    case EntryKind::Local: return "LOCAL";
  }
  return "?";
}

ojson entry_obj(const TraceEntry& e) {
  ojson j;
  j["step"] = e.step;
  j["ordinal"] = e.ordinal;
  j["kind"] = kind_str(e.kind);
  const bool access = e.kind == EntryKind::Read || e.kind == EntryKind::Write;
  if (access) {
    j["local_index"] = e.local_index;
    j["physical_index"] = e.physical_index;
    j["before"] = e.before.has_value() ? word_obj(*e.before) : ojson(nullptr);
    j["after"] = e.after.has_value() ? word_obj(*e.after) : ojson(nullptr);
  } else {
    j["local_index"] = nullptr;
    j["physical_index"] = nullptr;
    j["before"] = nullptr;
    j["after"] = nullptr;
  }
  j["pc"] = e.pc;
  return j;
}

}  // namespace

std::string word_to_json(const RegisterWord& w) { return word_obj(w).dump(); }

std::string trace_to_jsonl(const Trace& tr) {
  std::string out;
  for (const auto& e : tr) {
    out += entry_obj(e).dump();
    out += '\n';
  }
  return out;
}

void write_trace_jsonl(const Trace& tr, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open trace output file: " + path);
  f << trace_to_jsonl(tr);
}

std::vector<Permutation> parse_perm_json(const std::string& text,
                                         std::uint32_t n, std::uint32_t m) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_array()) {
    throw ConfigError("permutation file must be a JSON array of arrays");
  }
  if (j.size() != n) {
    throw ConfigError("permutation file must contain exactly n = " +
                      std::to_string(n) + " tables");
  }
  std::vector<Permutation> out;
  out.reserve(n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != m) {
      throw ConfigError("each permutation table must have exactly m = " +
                        std::to_string(m) + " entries");
    }
    std::vector<std::uint32_t> table;
    table.reserve(m);
    for (const auto& v : row) {
      if (!v.is_number_unsigned()) throw ConfigError("permutation entries must be 1-based indices");
      table.push_back(v.get<std::uint32_t>());
    }
    out.push_back(Permutation::from_table(std::move(table)));
  }
  return out;
}

std::vector<Permutation> parse_perm_file(const std::string& path,
                                         std::uint32_t n, std::uint32_t m) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open permutation file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_perm_json(ss.str(), n, m);
}

std::string check_result_json(const CheckResult& r) {
  ojson j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["detail"] = r.detail;
  return j.dump();
}

std::string exploration_report_json(const ExplorationReport& rep) {
  ojson j;
  j["states_visited"] = rep.states_visited;
  j["terminals"] = rep.terminals;
  ojson viols = ojson::array();
  for (const auto& v : rep.violations) {
    ojson vj;
    vj["check"] = v.check;
    vj["detail"] = v.detail;
    viols.push_back(std::move(vj));
  }
  j["violations"] = std::move(viols);
  j["deadlocks"] = rep.deadlocks;
  j["livelock_states"] = rep.livelock_states;
  j["terminal_fingerprint"] = rep.terminal_fingerprint;
  j["limit_exceeded"] = rep.limit_exceeded;
  return j.dump();
}

}  // namespace desanon
