#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <concepts>
#include <random>

#include "desanon/errors.hpp"
#include "desanon/feasibility.hpp"
#include "desanon/ids.hpp"
#include "desanon/permutation.hpp"

using namespace desanon;

namespace {

// Independent oracle: trial gcd by plain modulo arithmetic.
std::uint64_t oracle_gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool oracle_in_M(std::uint32_t n, std::uint64_t m) {
  if (m == 1) return false;
  for (std::uint64_t l = 2; l <= n; ++l) {
    if (oracle_gcd(l, m) != 1) return false;
  }
  return true;
}

}  // namespace

// Identities support equality only; any ordering must fail to compile.
static_assert(std::equality_comparable<ProcessId>);
static_assert(!std::totally_ordered<ProcessId>);

TEST_CASE("M(n) membership") {
  CHECK_FALSE(is_in_M(2, 4));  // even sizes above 2 are infeasible
  CHECK_FALSE(is_in_M(2, 1));  // 1 is excluded outright
  CHECK(is_in_M(3, 5));
  CHECK_FALSE(is_in_M(3, 9));
  CHECK_FALSE(is_in_M(2, 0));
  CHECK_THROWS_AS(is_in_M(1, 3), ConfigError);

  SUBCASE("agrees with the brute-force gcd oracle for n <= 10, m <= 100") {
    for (std::uint32_t n = 2; n <= 10; ++n) {
      for (std::uint64_t m = 0; m <= 100; ++m) {
        CHECK(is_in_M(n, m) == oracle_in_M(n, m));
      }
    }
  }

  SUBCASE("membership implies m > n") {
    for (std::uint32_t n = 2; n <= 10; ++n) {
      for (std::uint64_t m = 0; m <= 100; ++m) {
        if (is_in_M(n, m)) CHECK(m > n);
      }
    }
  }
}

TEST_CASE("next_in_M") {
  CHECK(next_in_M(2, 3) == 5);
  CHECK(next_in_M(4, 4) == 5);
  CHECK(next_in_M(3, 0) == 5);

  SUBCASE("minimal by linear scan for n <= 6, m' <= 50") {
    for (std::uint32_t n = 2; n <= 6; ++n) {
      for (std::uint64_t mp = 0; mp <= 50; ++mp) {
        std::uint64_t expect = mp + 1;
        while (!oracle_in_M(n, expect)) ++expect;
        CHECK(next_in_M(n, mp) == expect);
      }
    }
  }
}

TEST_CASE("control_bits") {
  CHECK(control_bits(8) == 4);
  CHECK(control_bits(5) == 4);
  CHECK(control_bits(1) == 1);
  CHECK(control_bits(2) == 2);
  CHECK(control_bits(1024) == 11);
  CHECK(control_bits(1025) == 12);
  CHECK_THROWS_AS(control_bits(0), ConfigError);
}

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(Permutation::from_table({1, 1, 3}), ConfigError);
  CHECK_THROWS_AS(Permutation::from_table({0, 1, 2}), ConfigError);
  CHECK_THROWS_AS(Permutation::from_table({1, 2, 4}), ConfigError);
  CHECK(Permutation::from_table({2, 3, 1}).apply(1) == 2);
  CHECK_THROWS_AS(Permutation::identity(3).apply(0), ConfigError);
  CHECK_THROWS_AS(Permutation::identity(3).apply(4), ConfigError);
}

TEST_CASE("permutation inverse and composition") {
  CHECK(Permutation::identity(4).inverse() == Permutation::identity(4));
  CHECK(Permutation::from_table({2, 3, 1}).inverse() ==
        Permutation::from_table({3, 1, 2}));

  SUBCASE("compose applies right-hand side first, all pairs for m <= 3") {
    for (std::uint32_t m = 1; m <= 3; ++m) {
      // enumerate all permutations of {1..m}
      std::vector<std::vector<std::uint32_t>> all;
      std::vector<std::uint32_t> t(m);
      for (std::uint32_t i = 0; i < m; ++i) t[i] = i + 1;
      do {
        all.push_back(t);
      } while (std::next_permutation(t.begin(), t.end()));
      for (const auto& pa : all) {
        for (const auto& qa : all) {
          const auto p = Permutation::from_table(pa);
          const auto q = Permutation::from_table(qa);
          const auto pq = compose(p, q);
          for (std::uint32_t x = 1; x <= m; ++x) {
            CHECK(pq.apply(x) == p.apply(q.apply(x)));
          }
        }
      }
    }
  }

  SUBCASE("random pairs for m <= 7") {
    std::mt19937_64 rng(12345);
    for (std::uint32_t m = 1; m <= 7; ++m) {
      for (int rep = 0; rep < 50; ++rep) {
        const auto p = Permutation::random(m, rng);
        const auto q = Permutation::random(m, rng);
        const auto pq = compose(p, q);
        for (std::uint32_t x = 1; x <= m; ++x) {
          CHECK(pq.apply(x) == p.apply(q.apply(x)));
        }
        CHECK(compose(p, p.inverse()) == Permutation::identity(m));
        CHECK(compose(p.inverse(), p) == Permutation::identity(m));
      }
    }
  }

  SUBCASE("random permutations are bijections") {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 200; ++rep) {
      const auto p = Permutation::random(6, rng);
      // from_table re-validates; reaching here means each index appears once
      CHECK(Permutation::from_table(p.table()) == p);
    }
  }
}
