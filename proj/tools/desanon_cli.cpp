// Command line front door: run simulations, verify properties, explore the
// interleaving space exhaustively, and query the feasible memory sizes M(n).
//
// Exit codes: 0 all selected checks passed, 1 a violation was found or a
// budget/limit was exceeded, 2 configuration error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "desanon/errors.hpp"
#include "desanon/feasibility.hpp"
#include "desanon/json_io.hpp"
#include "desanon/sched.hpp"
#include "desanon/verify.hpp"

using namespace desanon;

namespace {

using ojson = nlohmann::ordered_json;

struct CommonOpts {
  std::uint32_t n = 2;
  std::uint32_t m = 3;
  std::string variant = "v1";
  std::string v2_mode = "indexed";
  std::string contender = "fixed";
  std::string mutate = "none";
  std::uint64_t seed = 0;
  bool has_perm_seed = false;
  std::uint64_t perm_seed = 0;
  std::string perm_file;
  bool allow_infeasible = false;
  bool json = false;
};

Mutation parse_mutation(const std::string& s) {
  if (s == "none") return Mutation::None;
  if (s == "skip-desa-broadcast") return Mutation::SkipDesaBroadcast;
  if (s == "skip-bottom-sweep") return Mutation::SkipBottomSweep;
  if (s == "double-increment") return Mutation::DoubleIncrement;
  if (s == "id-order-branch") return Mutation::IdOrderBranch;
  if (s == "bit-reset") return Mutation::BitReset;
  if (s == "scan-updates-ct") return Mutation::ScanUpdatesCt;
  throw ConfigError("unknown mutation: " + s);
}

Config build_config(const CommonOpts& o, std::uint64_t budget) {
  Config cfg;
  cfg.n = o.n;
  cfg.m = o.m;
  if (o.variant == "v1") {
    cfg.variant = Variant::V1;
  } else if (o.variant == "v2") {
    cfg.variant = Variant::V2;
  } else {
    throw ConfigError("unknown variant: " + o.variant);
  }
  if (o.v2_mode == "indexed") {
    cfg.v2_mode = V2Mode::Indexed;
  } else if (o.v2_mode == "literal") {
    cfg.v2_mode = V2Mode::Literal;
  } else {
    throw ConfigError("unknown v2 mode: " + o.v2_mode);
  }
  if (o.contender == "fixed") {
    cfg.contender_policy = ContenderPolicy::FixedIndex;
  } else if (o.contender == "random") {
    cfg.contender_policy = ContenderPolicy::SeededRandom;
  } else {
    throw ConfigError("unknown contender policy: " + o.contender);
  }
  cfg.seed = o.seed;
  cfg.step_budget = budget;
  cfg.mutation = parse_mutation(o.mutate);
  cfg.enforce_feasibility = !o.allow_infeasible;
  return cfg;
}

std::vector<Permutation> build_perms(const CommonOpts& o) {
  if (!o.perm_file.empty()) return parse_perm_file(o.perm_file, o.n, o.m);
  return random_permutations(o.n, o.m, o.has_perm_seed ? o.perm_seed : o.seed);
}

std::vector<std::string> split_checks(const std::string& list) {
  static const std::vector<std::string> all{"safety",         "liveness",
                                            "lemma1",         "counter-sequence",
                                            "mutex-contract", "winner",
                                            "equivariance"};
  if (list == "all") return all;
  std::vector<std::string> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (std::find(all.begin(), all.end(), item) == all.end()) {
      throw ConfigError("unknown check: " + item);
    }
    out.push_back(item);
  }
  if (out.empty()) throw ConfigError("empty check selection");
  return out;
}

std::vector<CheckResult> evaluate_checks(const std::vector<std::string>& names,
                                         const Config& cfg,
                                         const std::vector<Permutation>& perms,
                                         SchedulerKind kind,
                                         const RunResult& rr) {
  std::vector<CheckResult> out;
  for (const auto& name : names) {
    if (name == "safety") out.push_back(check_safety(rr.world));
    else if (name == "liveness") out.push_back(check_liveness(rr.world, rr.completed));
    else if (name == "lemma1") out.push_back(check_lemma1(rr.world, rr.trace));
    else if (name == "counter-sequence") out.push_back(check_counter_sequence(rr.world, rr.trace));
    else if (name == "mutex-contract") out.push_back(check_mutex_contract(rr.world, rr.trace));
    else if (name == "winner") out.push_back(check_winner(rr.world, rr.trace));
    else if (name == "equivariance") out.push_back(check_equivariance(cfg, perms, kind, cfg.seed));
  }
  return out;
}

int cmd_run(const CommonOpts& o, const std::string& scheduler,
            std::uint64_t budget, const std::string& trace_out,
            const std::string& checks, std::uint32_t parallel_seeds) {
  const Config cfg = build_config(o, budget);
  validate_config(cfg);
  const auto perms = build_perms(o);
  const auto names = split_checks(checks);
  SchedulerKind kind;
  if (scheduler == "rr") {
    kind = SchedulerKind::RoundRobin;
  } else if (scheduler == "random") {
    kind = SchedulerKind::Random;
  } else {
    throw ConfigError("unknown scheduler: " + scheduler);
  }

  if (parallel_seeds > 1) {
    // Batch mode: disjoint seeds, one independent simulation each.
    const std::uint32_t workers =
        std::min<std::uint32_t>(parallel_seeds, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::future<std::vector<std::string>>> futs;
    for (std::uint32_t wkr = 0; wkr < workers; ++wkr) {
      futs.push_back(std::async(std::launch::async, [&, wkr] {
        std::vector<std::string> failures;
        for (std::uint64_t s = cfg.seed + wkr; s < cfg.seed + parallel_seeds; s += workers) {
          Config c = cfg;
          c.seed = s;
          const auto rr = run(c, perms, kind);
          for (const auto& cr : evaluate_checks(names, c, perms, kind, rr)) {
            if (!cr.passed) {
              failures.push_back("seed " + std::to_string(s) + ": " + cr.name +
                                 ": " + cr.detail);
            }
          }
        }
        return failures;
      }));
    }
    std::vector<std::string> failures;
    for (auto& f : futs) {
      for (auto& s : f.get()) failures.push_back(std::move(s));
    }
    if (o.json) {
      ojson j;
      j["seeds"] = parallel_seeds;
      j["failures"] = failures;
      std::cout << j.dump() << "\n";
    } else {
      for (const auto& s : failures) std::cout << "FAIL " << s << "\n";
      std::cout << (failures.empty() ? "PASS" : "FAIL") << " " << parallel_seeds
                << " seeds\n";
    }
    return failures.empty() ? 0 : 1;
  }

  const RunResult rr = run(cfg, perms, kind);
  if (!trace_out.empty()) write_trace_jsonl(rr.trace, trace_out);
  const auto results = evaluate_checks(names, cfg, perms, kind, rr);
  bool all_pass = rr.completed;
  for (const auto& r : results) all_pass = all_pass && r.passed;

  if (o.json) {
    ojson j;
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    j["variant"] = o.variant;
    j["seed"] = cfg.seed;
    j["completed"] = rr.completed;
    j["steps"] = rr.steps;
    ojson cj = ojson::array();
    for (const auto& r : results) cj.push_back(ojson::parse(check_result_json(r)));
    j["checks"] = std::move(cj);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (rr.completed ? "completed" : "budget exceeded") << " after "
              << rr.steps << " steps\n";
    for (const auto& r : results) {
      std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
      if (!r.detail.empty()) std::cout << " — " << r.detail;
      std::cout << "\n";
    }
  }
  return all_pass ? 0 : 1;
}

int cmd_explore(const CommonOpts& o, std::uint64_t max_states,
                const std::string& counterexample_out) {
  if (o.n > 3 || o.m > 5) {
    throw ConfigError("exploration is limited to n <= 3 and m <= 5");
  }
  const Config cfg = build_config(o, 0);
  validate_config(cfg);
  const auto perms = build_perms(o);
  ExploreLimits lim;
  lim.max_states = max_states;
  const ExplorationReport rep = explore(cfg, perms, lim);
  std::cout << exploration_report_json(rep) << "\n";
  if (!counterexample_out.empty()) {
    for (size_t i = 0; i < rep.violations.size(); ++i) {
      std::ofstream f(counterexample_out + "." + std::to_string(i) + ".jsonl",
                      std::ios::binary);
      f << rep.violations[i].trace_jsonl;
    }
  }
  const bool clean = rep.violations.empty() && rep.deadlocks == 0 &&
                     rep.livelock_states == 0 && rep.terminals > 0 &&
                     !rep.limit_exceeded;
  return clean ? 0 : 1;
}

int cmd_mtable(std::uint32_t n, std::uint64_t max_m, bool has_next,
               std::uint64_t next_after, bool json) {
  std::vector<std::uint64_t> members;
  for (std::uint64_t m = 2; m <= max_m; ++m) {
    if (is_in_M(n, m)) members.push_back(m);
  }
  if (json) {
    ojson j;
    j["n"] = n;
    if (max_m >= 1) {
      j["max"] = max_m;
      j["members"] = members;
    }
    if (has_next) {
      j["after"] = next_after;
      j["next"] = next_in_M(n, next_after);
    }
    std::cout << j.dump() << "\n";
    return 0;
  }
  if (max_m >= 1) {
    std::cout << "M(" << n << ") up to " << max_m << ": {";
    for (size_t i = 0; i < members.size(); ++i) {
      std::cout << (i ? ", " : "") << members[i];
    }
    std::cout << "}\n";
  }
  if (has_next) {
    std::cout << "next_in_M(" << n << ", " << next_after
              << ") = " << next_in_M(n, next_after) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and verification harness for desanonymizing an "
               "anonymous read/write shared memory"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string scheduler = "rr";
  std::uint64_t budget = 0;
  std::string trace_out;
  std::string checks = "all";
  std::uint32_t parallel_seeds = 1;
  std::uint64_t max_states = 500000;
  std::string counterexample_out;
  std::uint64_t mtable_max = 0;
  std::uint64_t mtable_next = 0;

  auto add_common = [&](CLI::App* cmd, bool with_variant) {
    cmd->add_option("--n", o.n, "number of processes (>= 2)");
    cmd->add_option("--m", o.m, "number of anonymous registers");
    if (with_variant) {
      cmd->add_option("--variant", o.variant, "protocol variant: v1|v2");
      cmd->add_option("--v2-mode", o.v2_mode, "second-phase write mode: literal|indexed");
      cmd->add_option("--contender-policy", o.contender, "waiting write target: fixed|random");
      cmd->add_option("--mutate", o.mutate, "fault injection (for testing the checkers)");
      cmd->add_option("--seed", o.seed, "scheduler/adversary seed");
      cmd->add_option("--perm-seed", o.perm_seed, "seed for random permutations (defaults to --seed)");
      cmd->add_option("--perm-file", o.perm_file, "JSON file: n arrays of m 1-based indices");
      cmd->add_flag("--allow-infeasible", o.allow_infeasible, "skip the m in M(n) gate");
    }
    cmd->add_flag("--json", o.json, "machine-readable output");
  };

  CLI::App* c_run = app.add_subcommand("run", "run one simulation and verify properties");
  add_common(c_run, true);
  c_run->add_option("--scheduler", scheduler, "rr|random");
  c_run->add_option("--budget", budget, "step budget (default 2000*n*m)");
  c_run->add_option("--trace-out", trace_out, "write the trace as JSON lines");
  c_run->add_option("--checks", checks, "all or a comma list: safety,liveness,lemma1,counter-sequence,mutex-contract,winner,equivariance");
  c_run->add_option("--parallel-seeds", parallel_seeds, "batch-run this many disjoint seeds");

  CLI::App* c_explore = app.add_subcommand("explore", "exhaustively explore all interleavings (n <= 3, m <= 5)");
  add_common(c_explore, true);
  c_explore->add_option("--max-states", max_states, "state cap before giving up");
  c_explore->add_option("--counterexample-out", counterexample_out, "prefix for violation trace files");

  CLI::App* c_mtable = app.add_subcommand("mtable", "show feasible memory sizes M(n)");
  c_mtable->add_option("--n", o.n, "number of processes (>= 2)");
  c_mtable->add_option("--max", mtable_max, "list members of M(n) up to this bound");
  auto* next_opt = c_mtable->add_option("--next", mtable_next, "smallest member of M(n) above this value");
  c_mtable->add_flag("--json", o.json, "machine-readable output");

  // --perm-seed presence tracking
  bool perm_seed_given = false;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--perm-seed") perm_seed_given = true;
  }
  o.has_perm_seed = perm_seed_given;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_run->parsed()) {
      return cmd_run(o, scheduler, budget, trace_out, checks, parallel_seeds);
    }
    if (c_explore->parsed()) {
      return cmd_explore(o, max_states, counterexample_out);
    }
    if (c_mtable->parsed()) {
      return cmd_mtable(o.n, mtable_max, next_opt->count() > 0, mtable_next, o.json);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
