#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "desanon/errors.hpp"

namespace desanon {

/// A bijection on {1..m}, stored as a 1-based forward table.
class Permutation {
 public:
  static Permutation identity(std::uint32_t m);

  /// Builds a permutation from a forward table of 1-based values.
  /// Throws ConfigError unless every index in {1..size} appears exactly once.
  static Permutation from_table(std::vector<std::uint32_t> table);

  /// Uniform random permutation drawn with Fisher-Yates. Uses rng() % k
  /// directly so the result depends only on the engine, not on the standard
  /// library's distribution implementation.
  template <class Rng>
  static Permutation random(std::uint32_t m, Rng& rng) {
    std::vector<std::uint32_t> t(m);
    for (std::uint32_t i = 0; i < m; ++i) t[i] = i + 1;
    for (std::uint32_t i = m; i > 1; --i) {
      std::uint32_t j = static_cast<std::uint32_t>(rng() % i);
      std::swap(t[i - 1], t[j]);
    }
    return Permutation(std::move(t));
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(table_.size()); }

  /// Applies the permutation to a 1-based index.
  std::uint32_t apply(std::uint32_t x) const {
    if (x < 1 || x > table_.size()) throw ConfigError("permutation index out of range");
    return table_[x - 1];
  }

  Permutation inverse() const;

  const std::vector<std::uint32_t>& table() const { return table_; }

  bool operator==(const Permutation&) const = default;

 private:
  explicit Permutation(std::vector<std::uint32_t> t) : table_(std::move(t)) {}
  std::vector<std::uint32_t> table_;
};

/// compose(p, q): apply q first, then p, i.e. compose(p,q)(x) = p(q(x)).
Permutation compose(const Permutation& p, const Permutation& q);

}  // namespace desanon
