#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "desanon/anonmem.hpp"
#include "desanon/errors.hpp"
#include "desanon/sched.hpp"
#include "test_util.hpp"

using namespace desanon;
using testutil::identities;
using testutil::step_until;

namespace {

StepTag tag() { return StepTag{"TEST", StepDetail::MapScan, 1}; }

Config base_cfg(std::uint32_t n, std::uint32_t m) {
  Config cfg;
  cfg.n = n;
  cfg.m = m;
  return cfg;
}

}  // namespace

TEST_CASE("memory initialization") {
  auto mem = make_memory(base_cfg(2, 3), identities(2, 3));
  const RegisterWord init{};
  for (std::uint32_t c = 1; c <= 3; ++c) {
    CHECK(mem.cell(c) == init);
    CHECK(mem.cell(c).bit == 0);
    CHECK(mem.cell(c).ct == 0);
    CHECK(value_position(mem.cell(c).body) == kBottom);
  }

  SUBCASE("rejects bad configurations") {
    Config one = base_cfg(1, 3);
    CHECK_THROWS_AS(make_memory(one, identities(1, 3)), ConfigError);
    Config zero_m = base_cfg(2, 0);
    zero_m.enforce_feasibility = false;
    CHECK_THROWS_AS(make_memory(zero_m, identities(2, 0)), ConfigError);
    CHECK_THROWS_AS(make_memory(base_cfg(2, 3), identities(1, 3)), ConfigError);
    CHECK_THROWS_AS(make_memory(base_cfg(2, 3), identities(2, 5)), ConfigError);
  }

  SUBCASE("feasibility gate") {
    CHECK_THROWS_AS(make_memory(base_cfg(2, 4), identities(2, 4)), ConfigError);
    Config ok = base_cfg(2, 4);
    ok.enforce_feasibility = false;
    CHECK_NOTHROW(make_memory(ok, identities(2, 4)));
  }
}

TEST_CASE("adversary translation") {
  auto perms = std::vector<Permutation>{Permutation::from_table({2, 3, 1}),
                                        Permutation::identity(3)};
  auto mem = make_memory(base_cfg(2, 3), perms);
  Trace tr;

  SUBCASE("a write by p1 at local index 1 lands in physical cell 2") {
    phys_write_body(mem, 1, 1, DesaVal{1}, 7, tr, tag());
    CHECK(carried_index(mem.cell(2).body) == 1);
    CHECK(mem.cell(2).ct == 7);
    CHECK(mem.cell(1) == RegisterWord{});
  }

  SUBCASE("reads follow the same translation") {
    auto perms2 = std::vector<Permutation>{Permutation::from_table({3, 1, 2}),
                                           Permutation::identity(3)};
    auto mem2 = make_memory(base_cfg(2, 3), perms2);
    phys_write_body(mem2, 2, 3, DesaVal{3}, 0, tr, tag());  // identity: cell 3
    const RegisterWord got = phys_read(mem2, 1, 1, tr, tag());
    CHECK(carried_index(got.body) == 3);  // local 1 resolves to physical 3
  }

  SUBCASE("index zero is rejected") {
    CHECK_THROWS_AS(phys_read(mem, 1, 0, tr, tag()), ConfigError);
    CHECK_THROWS_AS(phys_read(mem, 1, 4, tr, tag()), ConfigError);
  }
}

TEST_CASE("register writes touch only the designated parts") {
  auto mem = make_memory(base_cfg(2, 3), identities(2, 3));
  Trace tr;

  SUBCASE("body writes preserve the bit") {
    phys_write_bit(mem, 1, 1, 1, tr, tag());
    phys_write_body(mem, 1, 1, MutexVal{RegisterValue{IdAccess::make(42)}}, 1, tr, tag());
    phys_write_body(mem, 1, 1, DesaVal{2}, 4, tr, tag());
    CHECK(mem.cell(1).bit == 1);
    CHECK(mem.cell(1).ct == 4);
    CHECK(carried_index(mem.cell(1).body) == 2);
  }

  SUBCASE("bit writes preserve body and stamp") {
    phys_write_body(mem, 1, 2, DesaVal{1}, 3, tr, tag());
    phys_write_bit(mem, 1, 2, 1, tr, tag());
    CHECK(mem.cell(2).bit == 1);
    CHECK(mem.cell(2).ct == 3);
    CHECK(carried_index(mem.cell(2).body) == 1);
  }

  SUBCASE("a set bit can never be reset") {
    phys_write_bit(mem, 1, 3, 1, tr, tag());
    CHECK_NOTHROW(phys_write_bit(mem, 1, 3, 1, tr, tag()));  // idempotent
    CHECK_THROWS_AS(phys_write_bit(mem, 1, 3, 0, tr, tag()), ProtocolViolation);
  }
}

TEST_CASE("scan") {
  SUBCASE("fresh memory yields m identical neutral words") {
    auto mem = make_memory(base_cfg(2, 3), identities(2, 3));
    Trace tr;
    const auto snap = scan(mem, 1, tr, tag());
    REQUIRE(snap.size() == 3);
    for (const auto& w : snap) CHECK(w == RegisterWord{});
    CHECK(tr.size() == 3);
  }

  SUBCASE("after a finished run the snapshot carries the canonical naming") {
    Config cfg = base_cfg(2, 3);
    auto rr = run(cfg, identities(2, 3), SchedulerKind::RoundRobin);
    REQUIRE(rr.completed);
    Trace tr;
    const auto snap = scan(rr.world.memory(), 1, tr, tag());
    for (std::uint32_t x = 1; x <= 3; ++x) {
      CHECK(carried_index(snap[x - 1].body) == x);  // identity adversary
    }
  }
}

TEST_CASE("scan is not atomic: a cell may change between component reads") {
  // Drive the run by hand: the laggard completes one scan pass that straddles
  // the winner's broadcast, so its snapshot mixes old and new values.
  Config cfg = base_cfg(2, 3);
  World w(cfg, identities(2, 3));
  Trace tr;
  // p1 runs alone through its whole critical section; it is the first
  // entrant, so it becomes a laggard and starts scanning.
  REQUIRE(step_until(w, tr, 1, [&] { return w.process(1).pc == DesaPc::MapScan; }));
  // p2 alone up to the point where it is about to broadcast.
  REQUIRE(step_until(w, tr, 2, [&] { return w.process(2).pc == DesaPc::Broadcast; }));
  // p1 reads local 1: still a mutex word, carries no index.
  w.step(1, tr);
  CHECK_FALSE(carried_index(w.process(1).sm[0].body).has_value());
  // p2 rewrites every cell with the canonical naming.
  REQUIRE(step_until(w, tr, 2, [&] { return !w.enabled(2); }));
  // p1 finishes the pass: entries 2 and 3 now carry indices, entry 1 does not.
  w.step(1, tr);
  w.step(1, tr);
  CHECK_FALSE(carried_index(w.process(1).sm[0].body).has_value());
  CHECK(carried_index(w.process(1).sm[1].body).has_value());
  CHECK(carried_index(w.process(1).sm[2].body).has_value());
  // The guard rejects the mixed snapshot and p1 rescans and finishes.
  CHECK(w.process(1).pc == DesaPc::MapScan);
  REQUIRE(step_until(w, tr, 1, [&] { return !w.enabled(1); }));
  CHECK(w.all_done());
}

TEST_CASE("every trace access obeys the stored permutation") {
  Config cfg = base_cfg(3, 5);
  cfg.seed = 11;
  auto perms = random_permutations(3, 5, 77);
  auto rr = run(cfg, perms, SchedulerKind::Random);
  REQUIRE(rr.completed);
  for (const auto& e : rr.trace) {
    if (e.kind == EntryKind::Read || e.kind == EntryKind::Write) {
      CHECK(e.physical_index == perms[static_cast<size_t>(e.ordinal) - 1].apply(e.local_index));
    }
  }
}

TEST_CASE("bit sequences are non-decreasing over any trace") {
  Config cfg = base_cfg(2, 3);
  cfg.variant = Variant::V2;
  cfg.seed = 3;
  auto rr = run(cfg, random_permutations(2, 3, 5), SchedulerKind::Random);
  REQUIRE(rr.completed);
  std::vector<std::uint8_t> bits(cfg.m, 0);
  for (const auto& e : rr.trace) {
    if (e.kind != EntryKind::Write) continue;
    CHECK(e.after->bit >= bits[e.physical_index - 1]);
    bits[e.physical_index - 1] = e.after->bit;
  }
}
