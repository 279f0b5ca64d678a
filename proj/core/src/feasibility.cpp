#include "desanon/feasibility.hpp"

#include <numeric>

#include "desanon/errors.hpp"

namespace desanon {

bool is_in_M(std::uint32_t n, std::uint64_t m) {
  if (n < 2) throw ConfigError("is_in_M requires n >= 2");
  if (m == 1) return false;
  for (std::uint64_t l = 2; l <= n; ++l) {
    if (std::gcd(l, m) != 1) return false;
  }
  return true;
}

std::uint64_t next_in_M(std::uint32_t n, std::uint64_t m_prime) {
  std::uint64_t m = m_prime + 1;
  while (!is_in_M(n, m)) ++m;
  return m;
}

std::uint32_t control_bits(std::uint64_t m) {
  if (m < 1) throw ConfigError("control_bits requires m >= 1");
  std::uint32_t bits = 0;  // ceil(log2 m)
  while ((std::uint64_t{1} << bits) < m) ++bits;
  return 1 + bits;
}

}  // namespace desanon
