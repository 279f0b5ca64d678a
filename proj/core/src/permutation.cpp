#include "desanon/permutation.hpp"

#include <string>

namespace desanon {

Permutation Permutation::identity(std::uint32_t m) {
  std::vector<std::uint32_t> t(m);
  for (std::uint32_t i = 0; i < m; ++i) t[i] = i + 1;
  return Permutation(std::move(t));
}

Permutation Permutation::from_table(std::vector<std::uint32_t> table) {
  const auto m = table.size();
  std::vector<bool> seen(m, false);
  for (std::uint32_t v : table) {
    if (v < 1 || v > m || seen[v - 1]) {
      throw ConfigError("permutation table is not a bijection on {1.." +
                        std::to_string(m) + "}");
    }
    seen[v - 1] = true;
  }
  return Permutation(std::move(table));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> inv(table_.size());
  for (std::uint32_t x = 0; x < table_.size(); ++x) {
    inv[table_[x] - 1] = x + 1;
  }
  return Permutation(std::move(inv));
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw ConfigError("composing permutations of different sizes");
  std::vector<std::uint32_t> t(p.size());
  for (std::uint32_t x = 1; x <= q.size(); ++x) {
    t[x - 1] = p.apply(q.apply(x));
  }
  return Permutation::from_table(std::move(t));
}

}  // namespace desanon
