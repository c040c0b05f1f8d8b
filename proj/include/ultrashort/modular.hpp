#pragma once

// Word-size modular arithmetic. All moduli are < 2^63 so that sums of two
// reduced residues never overflow.

#include <cstdint>
#include <optional>
#include <vector>

namespace ultrashort {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxModulus = u64{1} << 63;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return s >= m ? s - m : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

u64 pow_mod(u64 base, u64 exp, u64 m);

/// Reduces a signed integer into [0, m).
inline u64 reduce_signed(i64 x, u64 m) {
  i64 r = x % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

/// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
std::optional<u64> inv_mod(u64 a, u64 m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// Distinct prime factors of n (trial division; n <= 2^63).
std::vector<u64> prime_factors(u64 n);

/// q^n, or nullopt if it does not fit below 2^63.
std::optional<u64> checked_power(u64 q, unsigned n);

}  // namespace ultrashort
