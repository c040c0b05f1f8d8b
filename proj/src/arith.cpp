#include "ultrashort/arith.hpp"

#include <algorithm>

#include "ultrashort/error.hpp"
#include "ultrashort/rng.hpp"

namespace ultrashort {
namespace {

constexpr u64 kEnumerationBound = 10'000;

// Dense polynomials over F_q, lowest degree first, no trailing zeros.
using Fq = std::vector<u64>;

void trim(Fq& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Fq& a) { return static_cast<int>(a.size()) - 1; }

Fq poly_rem(Fq a, const Fq& b, u64 q) {
  trim(a);
  const int db = deg(b);
  const u64 lead_inv = *inv_mod(b.back(), q);
  while (deg(a) >= db) {
    const u64 factor = mul_mod(a.back(), lead_inv, q);
    const int shift = deg(a) - db;
    for (int k = 0; k <= db; ++k) {
      a[shift + k] = sub_mod(a[shift + k], mul_mod(factor, b[k], q), q);
    }
    trim(a);
  }
  return a;
}

Fq poly_quot(Fq a, const Fq& b, u64 q) {
  trim(a);
  const int db = deg(b);
  if (deg(a) < db) return {};
  Fq out(a.size() - b.size() + 1, 0);
  const u64 lead_inv = *inv_mod(b.back(), q);
  while (deg(a) >= db) {
    const u64 factor = mul_mod(a.back(), lead_inv, q);
    const int shift = deg(a) - db;
    out[shift] = factor;
    for (int k = 0; k <= db; ++k) {
      a[shift + k] = sub_mod(a[shift + k], mul_mod(factor, b[k], q), q);
    }
    trim(a);
  }
  return out;
}

Fq mul_rem(const Fq& a, const Fq& b, const Fq& f, u64 q) {
  if (a.empty() || b.empty()) return {};
  Fq prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = add_mod(prod[i + j], mul_mod(a[i], b[j], q), q);
    }
  }
  return poly_rem(std::move(prod), f, q);
}

Fq make_monic(Fq a, u64 q) {
  trim(a);
  if (a.empty()) return a;
  const u64 inv = *inv_mod(a.back(), q);
  for (auto& c : a) c = mul_mod(c, inv, q);
  return a;
}

Fq poly_gcd(Fq a, Fq b, u64 q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Fq r = poly_rem(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a), q);
}

// (X + shift)^e mod f
Fq pow_linear_rem(u64 shift, u64 e, const Fq& f, u64 q) {
  Fq base = poly_rem(Fq{shift % q, 1}, f, q);
  Fq result{1};
  result = poly_rem(result, f, q);
  while (e > 0) {
    if (e & 1) result = mul_rem(result, base, f, q);
    e >>= 1;
    if (e) base = mul_rem(base, base, f, q);
  }
  return result;
}

// gcd(f, X^q - X): the product of the distinct linear factors of f.
Fq linear_part(const Fq& f, u64 q) {
  Fq xq = pow_linear_rem(0, q, f, q);
  xq.resize(std::max<std::size_t>(xq.size(), 2), 0);
  xq[1] = sub_mod(xq[1], 1, q);
  trim(xq);
  return poly_gcd(f, xq, q);
}

void split_linear(const Fq& f, u64 q, CounterRng& rng, std::vector<u64>& out) {
  if (deg(f) <= 0) return;
  if (deg(f) == 1) {
    out.push_back(sub_mod(0, mul_mod(f[0], *inv_mod(f[1], q), q), q));
    return;
  }
  for (;;) {
    const u64 shift = rng.below(q);
    Fq h = pow_linear_rem(shift, (q - 1) / 2, f, q);
    if (h.empty()) h = {0};
    h[0] = sub_mod(h[0], 1, q);
    trim(h);
    Fq d = poly_gcd(f, h, q);
    if (deg(d) > 0 && deg(d) < deg(f)) {
      split_linear(d, q, rng, out);
      split_linear(poly_quot(f, d, q), q, rng, out);
      return;
    }
  }
}

u64 polynomial_seed(const IntPoly& g, u64 q) {
  u64 h = splitmix64(q);
  for (const auto& c : g.coefficients()) {
    h = splitmix64(h ^ std::hash<std::string>{}(c.get_str(16)));
  }
  return h;
}

void require_prime(u64 q) {
  if (!is_prime(q)) throw Error(ErrorKind::NonPrimeModulus, std::to_string(q) + " is not prime");
}

void require_unramified(const IntPoly& g, u64 q) {
  mpz_class qq;
  mpz_import(qq.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &q);
  if (mpz_divisible_p(g.discriminant().get_mpz_t(), qq.get_mpz_t())) {
    throw Error(ErrorKind::RamifiedPrime, std::to_string(q) + " divides disc(g)");
  }
}

}  // namespace

namespace detail {

std::vector<u64> roots_by_enumeration(const std::vector<u64>& coeffs, u64 q) {
  std::vector<u64> out;
  for (u64 x = 0; x < q; ++x) {
    u64 acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = add_mod(mul_mod(acc, x, q), *it % q, q);
    if (acc == 0) out.push_back(x);
  }
  return out;
}

std::vector<u64> roots_by_splitting(const std::vector<u64>& coeffs, u64 q, u64 seed) {
  Fq f(coeffs.begin(), coeffs.end());
  for (auto& c : f) c %= q;
  trim(f);
  if (f.empty()) throw Error(ErrorKind::InvalidArgument, "zero polynomial mod q");
  std::vector<u64> out;
  if (q == 2) return roots_by_enumeration(f, q);
  Fq lin = linear_part(f, q);
  CounterRng rng(seed, Stream::RootSplitting, q);
  // X itself divides lin when 0 is a root; peel it off so that the
  // quadratic-character split never sees a zero root.
  if (!lin.empty() && lin[0] == 0 && deg(lin) >= 1) {
    out.push_back(0);
    lin = poly_quot(lin, Fq{0, 1}, q);
  }
  split_linear(lin, q, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

int count_roots_mod_prime(const std::vector<u64>& coeffs, u64 q) {
  if (q < kEnumerationBound) return static_cast<int>(roots_by_enumeration(coeffs, q).size());
  Fq f(coeffs.begin(), coeffs.end());
  trim(f);
  return deg(linear_part(f, q));
}

}  // namespace detail

PrimePowerModulus::PrimePowerModulus(u64 q, unsigned n) : q_(q), n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "exponent must be >= 1");
  require_prime(q);
  auto m = checked_power(q, n);
  if (!m) throw Error(ErrorKind::ModulusTooLarge, "q^n must be below 2^63");
  modulus_ = *m;
}

std::vector<u64> find_split_primes(const IntPoly& g, u64 lo, u64 hi) {
  if (lo < 2 || lo > hi) throw Error(ErrorKind::InvalidArgument, "need 2 <= lo <= hi");
  std::vector<u64> out;
  const int d = g.degree();
  mpz_class qq;
  for (u64 q = lo; q <= hi && q < kMaxModulus; ++q) {
    if (!is_prime(q)) continue;
    mpz_import(qq.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &q);
    if (mpz_divisible_p(g.discriminant().get_mpz_t(), qq.get_mpz_t())) continue;
    if (detail::count_roots_mod_prime(g.reduce_mod(q), q) == d) out.push_back(q);
  }
  return out;
}

RootList roots_mod_prime(const IntPoly& g, u64 q) {
  require_prime(q);
  require_unramified(g, q);
  const auto coeffs = g.reduce_mod(q);
  std::vector<u64> roots = q < kEnumerationBound ? detail::roots_by_enumeration(coeffs, q)
                                                  : detail::roots_by_splitting(coeffs, q, polynomial_seed(g, q));
  return RootList{PrimePowerModulus(q, 1), std::move(roots)};
}

RootList hensel_roots(const IntPoly& g, u64 q, unsigned n) {
  PrimePowerModulus modulus(q, n);
  RootList base = roots_mod_prime(g, q);
  if (n == 1) return base;
  const u64 m = modulus.value();
  std::vector<u64> lifted;
  lifted.reserve(base.roots.size());
  for (u64 r : base.roots) {
    // Newton steps r <- r - g(r)/g'(r); precision doubles each step.
    u64 x = r;
    unsigned have = 1;
    while (have < n) {
      have = std::min(2 * have, n);
      const u64 mk = *checked_power(q, have);
      const u64 gx = g.eval_mod(x, mk);
      const auto inv = inv_mod(g.derivative_eval_mod(x, mk), mk);
      if (!inv) throw Error(ErrorKind::RamifiedPrime, "root is not simple");
      x = sub_mod(x % mk, mul_mod(gx, *inv, mk), mk);
    }
    lifted.push_back(x % m);
  }
  std::sort(lifted.begin(), lifted.end());
  return RootList{modulus, std::move(lifted)};
}

RootList split_roots(const IntPoly& g, u64 q, unsigned n) {
  RootList roots = hensel_roots(g, q, n);
  if (static_cast<int>(roots.roots.size()) != g.degree()) {
    throw Error(ErrorKind::NotSplit, std::to_string(q) + " is not totally split for " + g.to_string());
  }
  return roots;
}

u64 multiplicative_generator(u64 q) {
  require_prime(q);
  if (q == 2) return 1;
  const auto factors = prime_factors(q - 1);
  for (u64 c = 2; c < q; ++c) {
    bool primitive = true;
    for (u64 p : factors) {
      if (pow_mod(c, (q - 1) / p, q) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return c;
  }
  throw Error(ErrorKind::InvalidArgument, "no primitive root found");
}

}  // namespace ultrashort
