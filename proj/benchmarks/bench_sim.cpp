#include <benchmark/benchmark.h>

#include "desanon/feasibility.hpp"
#include "desanon/json_io.hpp"
#include "desanon/sched.hpp"

using namespace desanon;

namespace {

Config make_cfg(std::uint32_t n, std::uint32_t m, Variant v) {
  Config cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.variant = v;
  return cfg;
}

void BM_RunV1(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto m = static_cast<std::uint32_t>(state.range(1));
  Config cfg = make_cfg(n, m, Variant::V1);
  const auto perms = random_permutations(n, m, 42);
  std::uint64_t steps = 0;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = ++seed;
    auto rr = run(cfg, perms, SchedulerKind::Random);
    steps += rr.steps;
    benchmark::DoNotOptimize(rr.trace.data());
  }
  state.counters["steps/s"] =
      benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_RunV1)->Args({3, 5})->Args({5, 7});

void BM_RunV2Indexed(benchmark::State& state) {
  Config cfg = make_cfg(3, 5, Variant::V2);
  const auto perms = random_permutations(3, 5, 9);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = ++seed;
    auto rr = run(cfg, perms, SchedulerKind::Random);
    benchmark::DoNotOptimize(rr.steps);
  }
}
BENCHMARK(BM_RunV2Indexed);

void BM_ExploreV1_2_3(benchmark::State& state) {
  Config cfg = make_cfg(2, 3, Variant::V1);
  const std::vector<Permutation> perms{Permutation::identity(3),
                                       Permutation::identity(3)};
  std::uint64_t states = 0;
  for (auto _ : state) {
    auto rep = explore(cfg, perms);
    states += rep.states_visited;
    benchmark::DoNotOptimize(rep.terminals);
  }
  state.counters["states/s"] =
      benchmark::Counter(static_cast<double>(states), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ExploreV1_2_3);

void BM_StateKey(benchmark::State& state) {
  Config cfg = make_cfg(3, 5, Variant::V1);
  World w(cfg, random_permutations(3, 5, 1));
  Trace tr;
  for (int i = 0; i < 40; ++i) w.step(1 + i % 3, tr);
  for (auto _ : state) {
    benchmark::DoNotOptimize(w.state_key());
  }
}
BENCHMARK(BM_StateKey);

void BM_NextInM(benchmark::State& state) {
  std::uint64_t m = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(next_in_M(9, ++m % 10000));
  }
}
BENCHMARK(BM_NextInM);

void BM_TraceJsonl(benchmark::State& state) {
  Config cfg = make_cfg(3, 5, Variant::V1);
  auto rr = run(cfg, random_permutations(3, 5, 4), SchedulerKind::Random);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_to_jsonl(rr.trace));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(rr.trace.size()));
}
BENCHMARK(BM_TraceJsonl);

}  // namespace

BENCHMARK_MAIN();
