#pragma once

#include <cstdint>

namespace desanon {

/// Membership in M(n): m != 1 and gcd(l, m) = 1 for every l in 2..n.
/// Note the consequence m in M(n) implies m > n (no prime factor of m
/// may be <= n). Requires n >= 2; m may be any value >= 0.
bool is_in_M(std::uint32_t n, std::uint64_t m);

/// Smallest m > m_prime with m in M(n). Always terminates: every prime
/// above n belongs to M(n).
std::uint64_t next_in_M(std::uint32_t n, std::uint64_t m_prime);

/// Permanent control bits a desanonymized register carries: 1 + ceil(log2 m).
/// The single tag bit plus enough bits for an index in {1..m}.
std::uint32_t control_bits(std::uint64_t m);

}  // namespace desanon
