#pragma once

#include <cstdint>
#include <vector>

#include "ultrashort/modular.hpp"
#include "ultrashort/poly.hpp"

namespace ultrashort {

/// q^n with q prime, n >= 1 and q^n < 2^63.
class PrimePowerModulus {
 public:
  PrimePowerModulus(u64 q, unsigned n);

  u64 prime() const { return q_; }
  unsigned exponent() const { return n_; }
  u64 value() const { return modulus_; }

  friend bool operator==(const PrimePowerModulus&, const PrimePowerModulus&) = default;

 private:
  u64 q_;
  unsigned n_;
  u64 modulus_;
};

/// Sorted, distinct roots of g modulo q^n.
struct RootList {
  PrimePowerModulus modulus;
  std::vector<u64> roots;
};

std::vector<u64> find_split_primes(const IntPoly& g, u64 lo, u64 hi);

/// Throws NonPrimeModulus or RamifiedPrime. Uses enumeration below 10^4 and
/// equal-degree splitting above.
RootList roots_mod_prime(const IntPoly& g, u64 q);

/// Roots of g mod q^n lifted from the simple roots mod q.
RootList hensel_roots(const IntPoly& g, u64 q, unsigned n);

/// Same as roots_mod_prime but throws NotSplit unless there are deg(g) roots.
RootList split_roots(const IntPoly& g, u64 q, unsigned n = 1);

/// Smallest positive primitive root modulo the prime q.
u64 multiplicative_generator(u64 q);

namespace detail {
// Exposed for tests: the two root-finding routes over F_q.
std::vector<u64> roots_by_enumeration(const std::vector<u64>& coeffs, u64 q);
std::vector<u64> roots_by_splitting(const std::vector<u64>& coeffs, u64 q, u64 seed);
// Number of distinct roots of f in F_q, i.e. deg gcd(f, X^q - X).
int count_roots_mod_prime(const std::vector<u64>& coeffs, u64 q);
}  // namespace detail

}  // namespace ultrashort
