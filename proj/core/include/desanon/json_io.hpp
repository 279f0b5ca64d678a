#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "desanon/permutation.hpp"
#include "desanon/sched.hpp"
#include "desanon/trace.hpp"
#include "desanon/verify.hpp"

namespace desanon {

/// JSON-lines serialization of a trace, one entry per line with fields
/// step, ordinal, kind, local_index, physical_index, before, after, pc.
std::string trace_to_jsonl(const Trace& tr);

void write_trace_jsonl(const Trace& tr, const std::string& path);

std::string word_to_json(const RegisterWord& w);

/// Permutation file: a JSON array of n arrays of m 1-based indices.
std::vector<Permutation> parse_perm_file(const std::string& path,
                                         std::uint32_t n, std::uint32_t m);
std::vector<Permutation> parse_perm_json(const std::string& text,
                                         std::uint32_t n, std::uint32_t m);

std::string check_result_json(const CheckResult& r);
std::string exploration_report_json(const ExplorationReport& rep);

}  // namespace desanon
