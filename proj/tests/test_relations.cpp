#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "ultrashort/arith.hpp"
#include "ultrashort/relations.hpp"

using namespace ultrashort;
using testing::kind_of;

namespace {

IntPoly P(const char* s) { return IntPoly::parse(s); }
LaurentPoly L(const char* s) { return LaurentPoly::parse(s); }
IntMatrix M(const std::vector<std::vector<long>>& rows) { return IntMatrix::from_rows(rows); }

std::string cyclotomic_minus_one(int d) { return "X^" + std::to_string(d) + "-1"; }

}  // namespace

TEST_SUITE("relations") {
  TEST_CASE("additive relation fixtures") {
    for (const char* s : {"X^3-1", "X^5-1", "X^7-1"}) {
      const RelationModule r = additive_relations(P(s));
      REQUIRE(r.rank() == 1);
      for (std::size_t c = 0; c < r.ambient_rank; ++c) CHECK(r.basis(0, c) == 1);
    }
    CHECK(additive_relations(P("X^6-1")).rank() == 4);
    CHECK(additive_relations(P("X^3+2X^2+3")).rank() == 0);
    const RelationModule cubic = additive_relations(P("X^3+X+3"));
    CHECK(cubic.basis == M({{1, 1, 1}}));
    CHECK(cubic.kind == RelationKind::Additive);
    CHECK(cubic.certificate.precision_bits > 0);
  }

  TEST_CASE("value, joint and multiplicative fixtures") {
    CHECK(value_relations(P("X^5-1"), L("X+X^-1")).rank() == 3);
    CHECK(value_relations(P("X^3-1"), L("X+X^-1")).basis == M({{1, 1, 1}, {0, 2, 1}}));
    CHECK(value_relations(P("X^2-2"), L("X^2")).basis == M({{1, -1}}));
    const int cube_exps[] = {1};
    CHECK(joint_power_relations(P("X^3-1"), cube_exps).basis == M({{1, 1, 1}}));
    const int sq_exps[] = {2, 4};
    CHECK(joint_power_relations(P("X^2-2"), sq_exps).basis == M({{1, -1}}));
    CHECK(multiplicative_relations(P("X^3-1"), L("X")).rank() == 3);
    CHECK(multiplicative_relations(P("X^2-2"), L("X")).basis == M({{2, -2}}));
    CHECK(multiplicative_relations(P("X-5"), L("X")).rank() == 0);
  }

  TEST_CASE("index and dominant root fixtures") {
    CHECK(index_ind(P("X^3+X^2+2X+1")) == 1);
    CHECK(index_ind(P("X^2+1")) == 0);
    CHECK(index_ind(P("X-5")) == 5);
    CHECK(index_ind(P("X^3-1")) == 1);
    CHECK(index_ind(P("X^3-2")) == 0);
    CHECK(dominant_root_holds(P("X^2-6X+1")) == true);
    CHECK(dominant_root_holds(P("X^3-100X^2+X+1")) == true);
    CHECK(dominant_root_holds(P("X^2+1")) == false);
  }

  TEST_CASE("single relation tests") {
    const auto roots = certified_complex_roots(P("X^3-1"), 128);
    const long ones[] = {1, 1, 1}, skew[] = {1, -1, 0};
    CHECK(gamma_is_zero(ones, roots, 6));
    CHECK_FALSE(gamma_is_zero(skew, roots, 6));
    const auto sq = certified_complex_roots(P("X^2-2"), 128);
    const long pair[] = {1, -1}, twice[] = {2, -2};
    CHECK(value_relation_holds(pair, sq, L("X^2"), 2));
    CHECK_FALSE(multiplicative_relation_holds(pair, sq, L("X"), 2));
    CHECK(multiplicative_relation_holds(twice, sq, L("X"), 2));
  }

  TEST_CASE("error kinds") {
    CHECK(kind_of([] { value_relations(P("X^2-2"), L("3")); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { value_relations(P("X^2+X"), L("X^-1")); }) != ErrorKind::ParseError);
    CHECK(kind_of([] { multiplicative_relations(P("X^2-1"), L("X-1")); }) == ErrorKind::VanishingValue);
    // The positive root of X^3 - 9X - 1 equals the sum of the moduli of the
    // other two, an irrational tie no finite precision separates.
    CHECK(kind_of([] { dominant_root_holds(P("X^3-9X-1"), 1024); }) == ErrorKind::PrecisionExhausted);
    // Exactly representable roots certify the tie as "not dominant".
    CHECK_FALSE(dominant_root_holds(P("X^2-1"), 1024));
    const auto roots = certified_complex_roots(P("X^3-1"), 128);
    const long wrong_length[] = {1, 1};
    CHECK(kind_of([&] { gamma_is_zero(wrong_length, roots, 6); }) == ErrorKind::InvalidArgument);
  }

  TEST_CASE("property: rank of X^d - 1 is d - phi(d)") {
    for (int d = 2; d <= 12; ++d) {
      CAPTURE(d);
      CHECK(static_cast<long>(additive_relations(P(cyclotomic_minus_one(d).c_str())).rank()) ==
            d - oracle::euler_phi(d));
    }
  }

  TEST_CASE("property: real-part relations of prime cyclotomics") {
    // x + 1/x takes (l - 1)/2 distinct nonzero values plus 2 at x = 1; the
    // l values span a space of dimension (l - 1)/2.
    for (int l : {3, 5, 7}) {
      CAPTURE(l);
      CHECK(static_cast<int>(value_relations(P(cyclotomic_minus_one(l).c_str()), L("X+X^-1")).rank()) ==
            (l + 1) / 2);
    }
  }

  TEST_CASE("property: relations survive reduction modulo split primes") {
    // Reduction at a prime above q matches the complex roots with the roots
    // mod q through some permutation; under it every relation becomes a
    // congruence.
    for (const char* s : {"X^3+X+3", "X^6-1", "X^5-1", "X^4-X^2+1"}) {
      const IntPoly g = P(s);
      const RelationModule r = additive_relations(g);
      const auto primes = find_split_primes(g, 1000, 3000);
      REQUIRE_FALSE(primes.empty());
      for (u64 q : primes) {
        std::vector<u64> roots = roots_mod_prime(g, q).roots;
        bool matched = false;
        do {
          bool all = true;
          for (std::size_t row = 0; row < r.rank() && all; ++row) {
            mpz_class acc = 0;
            for (std::size_t c = 0; c < r.ambient_rank; ++c) acc += r.basis(row, c) * mpz_class(roots[c]);
            all = acc % mpz_class(q) == 0;
          }
          matched = all;
        } while (!matched && std::next_permutation(roots.begin(), roots.end()));
        CAPTURE(s);
        CAPTURE(q);
        CHECK(matched);
      }
    }
  }

  TEST_CASE("property: results do not depend on the starting precision") {
    for (const char* s : {"X^3+X+3", "X^6-1", "X^3-9X-1", "X^4-2"}) {
      RelationOptions coarse, fine;
      fine.initial_bits = 256;
      CHECK(additive_relations(P(s), coarse).basis == additive_relations(P(s), fine).basis);
    }
  }

  TEST_CASE("property: a dominant root forces a trivial relation lattice") {
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<long> small(-3, 3);
    int found = 0;
    for (int trial = 0; trial < 60 && found < 8; ++trial) {
      const long lead = 20 + static_cast<long>(rng() % 30);
      std::vector<mpz_class> f{small(rng), small(rng), -lead, 1};
      if (f[0] == 0 || discriminant(f) == 0) continue;
      const IntPoly g(f);
      if (!dominant_root_holds(g)) continue;
      ++found;
      CHECK(additive_relations(g).rank() == 0);
    }
    CHECK(found > 0);
  }

  TEST_CASE("property: multiplicative relations of X^2 - 2 against enumeration") {
    // x1 = sqrt2, x2 = -sqrt2: x1^a x2^b = (-1)^b 2^{(a+b)/2} is 1 iff a + b = 0 and b even.
    const RelationModule r = multiplicative_relations(P("X^2-2"), L("X"));
    for (long a = -3; a <= 3; ++a) {
      for (long b = -3; b <= 3; ++b) {
        const long alpha[] = {a, b};
        const bool expected = a + b == 0 && b % 2 == 0;
        CAPTURE(a);
        CAPTURE(b);
        CHECK(r.contains(alpha) == expected);
      }
    }
  }

  TEST_CASE("property: membership agrees with the certified single-relation test") {
    const IntPoly g = P("X^6-1");
    const RelationModule r = additive_relations(g);
    const auto roots = certified_complex_roots(g, 128);
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> coeff(-2, 2);
    for (int trial = 0; trial < 80; ++trial) {
      std::vector<long> alpha(6);
      for (auto& a : alpha) a = coeff(rng);
      CHECK(r.contains(std::span<const long>(alpha)) == gamma_is_zero(alpha, roots, 720));
    }
  }
}
