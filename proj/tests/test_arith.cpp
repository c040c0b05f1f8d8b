#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "ultrashort/arith.hpp"
#include "ultrashort/error.hpp"

using namespace ultrashort;

namespace {

IntPoly P(const char* s) { return IntPoly::parse(s); }

std::vector<u64> roots_of(const IntPoly& g, u64 q) { return roots_mod_prime(g, q).roots; }

using testing::kind_of;

}  // namespace

TEST_SUITE("arith") {
  TEST_CASE("polynomial parsing accepts both notations") {
    CHECK(P("X^3+X+3") == P("3,1,0,1"));
    CHECK(P("X^3 + 2*X^2 + 3") == P("3,0,2,1"));
    CHECK(P("X^3-9X-1").coefficient_string() == "-1,-9,0,1");
    CHECK(P("X^5-1").to_string() == "X^5-1");
    CHECK(kind_of([] { P("2X^2+1"); }) == ErrorKind::InvalidPolynomial);
    CHECK(kind_of([] { P("X^2-2X+1"); }) == ErrorKind::InvalidPolynomial);
    CHECK(kind_of([] { P("X^^2"); }) == ErrorKind::ParseError);
    CHECK(LaurentPoly::parse("X+X^-1").min_exponent() == -1);
    CHECK(LaurentPoly::parse("X + X^(-1)") == LaurentPoly::parse("X^-1+X"));
  }

  TEST_CASE("discriminant fixtures") {
    CHECK(discriminant(P("X^2-2")) == 8);
    CHECK(discriminant(P("X-5")) == 1);
    CHECK(discriminant(P("X^3+X+3")) == -247);
    // b^2 c^2 - 4c^3 - 4b^3 e - 27 e^2 + 18 bce for X^3 + bX^2 + cX + e
    CHECK(discriminant(P("X^3+2X^2+3")) == -4 * 8 * 3 - 27 * 9);
  }

  TEST_CASE("find_split_primes") {
    const auto a = find_split_primes(P("X^3+X+3"), 30200, 30250);
    CHECK(std::find(a.begin(), a.end(), 30223) != a.end());
    const auto b = find_split_primes(P("X^3+2X^2+3"), 30100, 30120);
    CHECK(std::find(b.begin(), b.end(), 30113) != b.end());
    CHECK(find_split_primes(P("X^5-1"), 2, 40) == std::vector<u64>{11, 31});
    CHECK(find_split_primes(P("X^2+1"), 3, 3).empty());
  }

  TEST_CASE("roots modulo a prime") {
    CHECK(roots_of(P("X^3-1"), 7) == std::vector<u64>{1, 2, 4});
    CHECK(roots_of(P("X^5-1"), 11) == std::vector<u64>{1, 3, 4, 5, 9});
    CHECK(roots_of(P("X^2-2"), 7) == std::vector<u64>{3, 4});
    CHECK(kind_of([] { roots_mod_prime(P("X^2-2"), 9); }) == ErrorKind::NonPrimeModulus);
    CHECK(kind_of([] { roots_mod_prime(P("X^2-2"), 2); }) == ErrorKind::RamifiedPrime);
    CHECK(kind_of([] { split_roots(P("X^2+1"), 7); }) == ErrorKind::NotSplit);
  }

  TEST_CASE("Hensel lifting") {
    CHECK(hensel_roots(P("X^2-2"), 7, 2).roots == std::vector<u64>{10, 39});
    CHECK(hensel_roots(P("X^3-1"), 7, 1).roots == std::vector<u64>{1, 2, 4});
    CHECK(hensel_roots(P("X-5"), 3, 4).roots == std::vector<u64>{5});
    CHECK(kind_of([] { PrimePowerModulus(3, 40); }) == ErrorKind::ModulusTooLarge);
  }

  TEST_CASE("multiplicative generator") {
    CHECK(multiplicative_generator(7) == 3);
    CHECK(multiplicative_generator(2) == 1);
    CHECK(multiplicative_generator(13) == 2);
    CHECK(kind_of([] { multiplicative_generator(15); }) == ErrorKind::NonPrimeModulus);
  }

  TEST_CASE("primality agrees with trial division") {
    for (u64 n = 0; n < 5000; ++n) CHECK(is_prime(n) == oracle::brute_is_prime(n));
    CHECK(is_prime(9223372036854775783ULL));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  }

  TEST_CASE("property: root finder matches enumeration on random cubics") {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> coeff(-20, 20);
    std::vector<long> primes;
    for (long p = 2; p <= 200; ++p) {
      if (oracle::brute_is_prime(p)) primes.push_back(p);
    }
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    int checked = 0;
    while (checked < 100) {
      std::vector<long> f{coeff(rng), coeff(rng), coeff(rng), 1};
      std::vector<mpz_class> fz(f.begin(), f.end());
      if (discriminant(fz) == 0) continue;
      const IntPoly g(fz);
      const long q = primes[pick(rng)];
      if (g.discriminant() % q == 0) continue;
      CHECK(roots_of(g, q) == oracle::brute_roots(f, q));
      ++checked;
    }
  }

  TEST_CASE("property: equal-degree splitting above the enumeration threshold") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> coeff(-50, 50);
    const std::vector<u64> primes{10007, 30223, 65537, 99991};
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<long> f{coeff(rng), coeff(rng), coeff(rng), coeff(rng), 1};
      const u64 q = primes[trial % primes.size()];
      std::vector<u64> coeffs;
      for (long c : f) coeffs.push_back(static_cast<u64>(oracle::mod(c, static_cast<std::int64_t>(q))));
      CHECK(detail::roots_by_splitting(coeffs, q, 1234 + trial) == oracle::brute_roots(f, static_cast<std::int64_t>(q)));
    }
  }

  TEST_CASE("property: split primes give d simple roots") {
    for (const char* s : {"X^3+X+3", "X^3+2X^2+3", "X^4-2", "X^5-1"}) {
      const IntPoly g = P(s);
      for (u64 q : find_split_primes(g, 2, 2000)) {
        const auto roots = roots_of(g, q);
        REQUIRE(static_cast<int>(roots.size()) == g.degree());
        for (u64 r : roots) CHECK(g.derivative_eval_mod(r, q) != 0);
      }
    }
  }

  TEST_CASE("property: Hensel roots are compatible across exponents") {
    for (const char* s : {"X^3+X+3", "X^2-2", "X^3-9X-1"}) {
      const IntPoly g = P(s);
      for (u64 q : {7ULL, 13ULL, 29ULL, 31ULL}) {
        if (g.discriminant() % q == 0) continue;
        for (unsigned n = 2; n <= 6; ++n) {
          const RootList hi = hensel_roots(g, q, n), lo = hensel_roots(g, q, n - 1);
          std::vector<u64> reduced;
          for (u64 r : hi.roots) {
            CHECK(g.eval_mod(r, hi.modulus.value()) == 0);
            reduced.push_back(r % lo.modulus.value());
          }
          std::sort(reduced.begin(), reduced.end());
          CHECK(reduced == lo.roots);
        }
      }
    }
  }

  TEST_CASE("property: q | disc iff a repeated root mod q (cubics, q <= 100)") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> coeff(-12, 12);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<long> f{coeff(rng), coeff(rng), coeff(rng), 1};
      std::vector<long> df{f[1], 2 * f[2], 3};
      const mpz_class disc = discriminant(std::vector<mpz_class>(f.begin(), f.end()));
      for (long q = 2; q <= 100; ++q) {
        if (!oracle::brute_is_prime(q)) continue;
        bool repeated = false;
        for (long x = 0; x < q && !repeated; ++x) {
          repeated = oracle::eval_mod(f, x, q) == 0 && oracle::eval_mod(df, x, q) == 0;
        }
        CHECK((disc % q == 0) == repeated);
      }
    }
  }
}
