#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "support.hpp"
#include "ultrashort/relations.hpp"
#include "ultrashort/sums.hpp"

using namespace ultrashort;
using testing::kind_of;

namespace {

IntPoly P(const char* s) { return IntPoly::parse(s); }
LaurentPoly L(const char* s) { return LaurentPoly::parse(s); }

cplx e(double t) { return std::polar(1.0, 2.0 * std::numbers::pi * t); }

std::vector<u64> members(u64 q, unsigned n, const char* descriptor) {
  return make_condition_set(q, n, ConditionDescriptor::parse(descriptor)).members;
}

}  // namespace

TEST_SUITE("sums") {
  TEST_CASE("additive grid fixtures") {
    const SumGrid single = additive_sum_grid(P("X-5"), 7, 1, L("X"));
    REQUIRE(single.values.size() == 7);
    for (u64 a = 0; a < 7; ++a) CHECK(std::abs(single.values[a] - e(5.0 * a / 7.0)) < 1e-12);
    const SumGrid cube = additive_sum_grid(P("X^3-1"), 7, 1, L("X"));
    CHECK(std::abs(cube.values[0] - cplx(3.0, 0.0)) < 1e-15);
    CHECK(std::abs(cube.values[1] - (e(1.0 / 7) + e(2.0 / 7) + e(4.0 / 7))) < 1e-12);
    CHECK(cube.excluded.empty());
    CHECK(cube.meta.family == "additive");
  }

  TEST_CASE("unit_root reduces exactly") {
    CHECK(unit_root(0, 7) == cplx(1.0, 0.0));
    CHECK(std::abs(unit_root(1, 4) - cplx(0.0, 1.0)) < 1e-16);
    CHECK(std::abs(unit_root(1'000'000'007ULL * 3 + 1, 1'000'000'007ULL) - e(1.0 / 1'000'000'007.0)) < 1e-15);
  }

  TEST_CASE("multiplicative character fixtures") {
    const SumGrid cube13 = mult_char_sum_grid(P("X^3-1"), 13, L("X"));
    REQUIRE(cube13.values.size() == 12);
    CHECK(std::count_if(cube13.values.begin(), cube13.values.end(),
                        [](cplx z) { return std::abs(z - cplx(3.0, 0.0)) < 1e-9; }) == 4);
    CHECK(std::count_if(cube13.values.begin(), cube13.values.end(), [](cplx z) { return std::abs(z) < 1e-9; }) == 8);
    const SumGrid five = mult_char_sum_grid(P("X-5"), 7, L("X"));
    for (cplx z : five.values) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
    CHECK(std::abs(mult_char_sum_grid(P("X^3-1"), 7, L("X")).values[0] - cplx(3.0, 0.0)) < 1e-12);
    CHECK(kind_of([] { mult_char_sum_grid(P("X^2-1"), 7, L("X-1")); }) == ErrorKind::VanishingValue);
  }

  TEST_CASE("discrete logarithm against powering") {
    for (u64 q : {7ULL, 13ULL, 10007ULL, 65537ULL}) {
      const u64 gen = multiplicative_generator(q);
      u64 x = 1;
      for (u64 s = 0; s < std::min<u64>(q - 1, 400); ++s) {
        CHECK(discrete_log(x, gen, q) == s);
        x = x * gen % q;
      }
    }
  }

  TEST_CASE("Kloosterman fixtures") {
    CHECK(std::abs(hyper_kloosterman(2, 1, 5).real() - 0.1708204) < 1e-6);
    CHECK(std::abs(hyper_kloosterman(2, 1, 5) - oracle::kl2_direct(1, 5)) < 1e-12);
    CHECK(kind_of([] { hyper_kloosterman(1, 1, 5); }) == ErrorKind::OutOfRangeParameter);
    CHECK(kind_of([] { hyper_kloosterman(2, 0, 5); }) == ErrorKind::OutOfRangeParameter);
    CHECK(kind_of([] { hyper_kloosterman(2, 1, 9); }) == ErrorKind::NonPrimeModulus);
    const SumGrid one = trace_sum_grid(P("X-1"), 101, 2, TraceMode::Dilate);
    CHECK(one.excluded == std::vector<u64>{0});
    for (std::size_t k = 0; k < one.values.size(); ++k) {
      CHECK(std::abs(one.values[k] - oracle::kl2_direct(static_cast<std::int64_t>(one.params[k]), 101)) < 1e-9);
    }
    CHECK(kind_of([] { trace_sum_grid(P("X^2-X"), 7, 2, TraceMode::Dilate); }) == ErrorKind::ZeroRoot);
  }

  TEST_CASE("property: Kl2 is real, obeys the Weil bound and matches the oracle table") {
    for (u64 q : {5ULL, 11ULL, 101ULL, 257ULL}) {
      const auto table = kloosterman_table(2, q);
      for (u64 a = 1; a < q; ++a) {
        CHECK(std::abs(table[a].imag()) < 1e-12);
        CHECK(std::abs(table[a]) <= 2.0 + 1e-12);
        CHECK(std::abs(table[a] - oracle::kl2_direct(static_cast<std::int64_t>(a), static_cast<std::int64_t>(q))) <
              1e-9);
      }
    }
  }

  TEST_CASE("property: Kl3 conjugate symmetry and table agreement") {
    std::mt19937_64 rng(8);
    const std::vector<u64> primes{7, 13, 31, 61, 97, 101};
    for (int trial = 0; trial < 60; ++trial) {
      const u64 q = primes[trial % primes.size()];
      const u64 a = 1 + rng() % (q - 1);
      CHECK(std::abs(hyper_kloosterman(3, q - a, q) - std::conj(hyper_kloosterman(3, a, q))) < 1e-9);
      CHECK(std::abs(hyper_kloosterman(3, a, q)) <= 3.0 + 1e-9);
    }
    const auto table = kloosterman_table(3, 31);
    for (u64 a = 1; a < 31; ++a) CHECK(std::abs(table[a] - hyper_kloosterman(3, a, 31)) < 1e-9);
    // Kl4 via the table recursion against a direct triple sum.
    const u64 q = 13;
    for (u64 a = 1; a < q; ++a) {
      cplx direct = 0.0;
      for (u64 x = 1; x < q; ++x)
        for (u64 y = 1; y < q; ++y)
          for (u64 z = 1; z < q; ++z) {
            const u64 xyz = x * y % q * z % q;
            u64 inv = 1;
            while (xyz * inv % q != 1) ++inv;
            direct += e(static_cast<double>((x + y + z + a * inv) % q) / q);
          }
      direct /= std::pow(static_cast<double>(q), 1.5);
      CHECK(std::abs(hyper_kloosterman(4, a, q) - direct) < 1e-9);
    }
  }

  TEST_CASE("property: Parseval on full additive grids") {
    for (const char* s : {"X^3+X+3", "X^3+2X^2+3", "X^3-1", "X^4-2"}) {
      const IntPoly g = P(s);
      for (u64 q : find_split_primes(g, 100, 700)) {
        for (unsigned n : {1u, 2u}) {
          if (n == 2 && q > 300) continue;
          const SumGrid grid = additive_sum_grid(g, q, n, L("X"));
          double total = 0.0;
          for (cplx z : grid.values) total += std::norm(z);
          CHECK(std::abs(total / static_cast<double>(grid.values.size()) - g.degree()) < 1e-9 * g.degree());
        }
      }
    }
  }

  TEST_CASE("property: full Weyl sums are exact and match the residue") {
    const IntPoly g = P("X^5-1");
    const long ones[] = {1, 1, 1, 1, 1}, first[] = {1, 0, 0, 0, 0};
    CHECK(weyl_sum_full(g, 11, 1, ones) == 1);
    CHECK(weyl_sum_full(g, 11, 1, first) == 0);
    const auto full = make_condition_set(11, 1, ConditionDescriptor::full());
    CHECK(weyl_sum(g, 11, 1, ones, full) == cplx(1.0, 0.0));
    CHECK(weyl_sum(g, 11, 1, first, full) == cplx(0.0, 0.0));
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> coeff(-3, 3);
    const IntPoly cubic = P("X^3+X+3");
    const RelationModule R = additive_relations(cubic);
    for (u64 q : find_split_primes(cubic, 1000, 5000)) {
      std::vector<long> alpha{coeff(rng), coeff(rng), coeff(rng)};
      const u64 c = weyl_residue(cubic, q, 1, alpha, R);
      const auto roots = aligned_roots(cubic, q, 1, R).roots;
      const long long direct = oracle::mod(alpha[0] * static_cast<long long>(roots[0]) +
                                               alpha[1] * static_cast<long long>(roots[1]) +
                                               alpha[2] * static_cast<long long>(roots[2]),
                                           static_cast<long long>(q));
      CHECK(c == static_cast<u64>(direct));
      CHECK(weyl_sum_full(cubic, q, 1, alpha, R) == (c == 0 ? 1 : 0));
    }
  }

  TEST_CASE("property: aligned roots permute the lifted roots and satisfy every relation") {
    for (const char* s : {"X^6-1", "X^4-X^2+1", "X^12-1", "X^3+X+3"}) {
      const IntPoly g = P(s);
      const RelationModule R = additive_relations(g);
      for (u64 q : find_split_primes(g, 1000, 4000)) {
        for (unsigned n : {1u, 2u}) {
          const RootList aligned = aligned_roots(g, q, n, R);
          std::vector<u64> sorted = aligned.roots;
          std::sort(sorted.begin(), sorted.end());
          CHECK(sorted == split_roots(g, q, n).roots);
          const u64 m = aligned.modulus.value();
          for (std::size_t r = 0; r < R.rank(); ++r) {
            mpz_class acc = 0;
            for (std::size_t c = 0; c < R.ambient_rank; ++c) acc += R.basis(r, c) * mpz_class(aligned.roots[c]);
            CHECK(acc % mpz_class(m) == 0);
          }
        }
      }
    }
  }

  TEST_CASE("sorted residues are not a valid alignment for X^6 - 1") {
    // Guards the reason aligned_roots exists: the antipodal relations
    // x + (-x) = 0 pair roots that sorting mod q does not pair.
    const IntPoly g = P("X^6-1");
    const RelationModule R = additive_relations(g);
    int broken = 0;
    for (u64 q : find_split_primes(g, 1000, 4000)) {
      const auto sorted = split_roots(g, q, 1).roots;
      for (std::size_t r = 0; r < R.rank(); ++r) {
        mpz_class acc = 0;
        for (std::size_t c = 0; c < 6; ++c) acc += R.basis(r, c) * mpz_class(sorted[c]);
        if (acc % mpz_class(q) != 0) {
          ++broken;
          break;
        }
      }
    }
    CHECK(broken > 0);
  }

  TEST_CASE("property: relation rows give Weyl sum 1 at every split prime") {
    for (const char* s : {"X^3+X+3", "X^6-1", "X^5-1"}) {
      const IntPoly g = P(s);
      const RelationModule r = additive_relations(g);
      for (u64 q : find_split_primes(g, 1000, 20000)) {
        for (const auto& row : r.basis.to_long()) {
          CHECK(weyl_sum_full(g, q, 1, row, r) == 1);
          CHECK(weyl_sum_full(g, q, 2, row, r) == 1);
        }
      }
    }
  }

  TEST_CASE("property: multiplicative sums for X^d - 1 take the values d and 0") {
    for (int d : {2, 3, 4, 6}) {
      const IntPoly g = P(("X^" + std::to_string(d) + "-1").c_str());
      for (u64 q : find_split_primes(g, 50, 400)) {
        const SumGrid grid = mult_char_sum_grid(g, q, L("X"));
        const auto hits = std::count_if(grid.values.begin(), grid.values.end(),
                                        [d](cplx z) { return std::abs(z - cplx(d, 0.0)) < 1e-9; });
        const auto zeros =
            std::count_if(grid.values.begin(), grid.values.end(), [](cplx z) { return std::abs(z) < 1e-9; });
        CHECK(hits == static_cast<long>((q - 1) / d));
        CHECK(hits + zeros == static_cast<long>(q - 1));
      }
    }
  }

  TEST_CASE("multi-parameter grids and samples") {
    const int exps[] = {1, -1};
    const auto grid = multi_param_sum_grid(P("X^3-1"), 7, exps);
    REQUIRE(grid.size() == 49);
    CHECK(std::abs(grid[0] - cplx(3.0, 0.0)) < 1e-15);
    // a_1 slowest: entry (a, b) = sum_r e((a r + b / r) / 7), roots {1, 2, 4}, inverses {1, 4, 2}.
    const cplx expected = e((3.0 * 1 + 5.0 * 1) / 7) + e((3.0 * 2 + 5.0 * 4) / 7) + e((3.0 * 4 + 5.0 * 2) / 7);
    CHECK(std::abs(grid[3 * 7 + 5] - expected) < 1e-12);
    const auto a = multi_param_sum_samples(P("X^3-1"), 7, exps, 500, 99);
    const auto b = multi_param_sum_samples(P("X^3-1"), 7, exps, 500, 99, 4);
    CHECK(a == b);
    for (cplx z : a) {
      const bool on_grid = std::any_of(grid.begin(), grid.end(), [z](cplx w) { return std::abs(z - w) < 1e-12; });
      CHECK(on_grid);
    }
    const int lin[] = {1};
    for (cplx z : multi_param_sum_samples(P("X-5"), 7, lin, 5, 1)) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
  }

  TEST_CASE("grids are independent of the thread count") {
    const IntPoly g = P("X^3+X+3");
    const u64 q = find_split_primes(g, 2000, 3000).front();
    CHECK(additive_sum_grid(g, q, 1, L("X"), 1).values == additive_sum_grid(g, q, 1, L("X"), 3).values);
    const u64 p = find_split_primes(P("X^3-9X-1"), 200, 2000).front();
    CHECK(trace_sum_grid(P("X^3-9X-1"), p, 2, TraceMode::Translate, 1).values ==
          trace_sum_grid(P("X^3-9X-1"), p, 2, TraceMode::Translate, 4).values);
  }

  TEST_CASE("condition set fixtures") {
    CHECK(members(7, 1, "interval:0.5") == std::vector<u64>{0, 1, 2, 3});
    CHECK(members(7, 1, "image:X^2") == std::vector<u64>{0, 1, 2, 4});
    CHECK(members(7, 1, "subgroup:3") == std::vector<u64>{1, 2, 4});
    CHECK(members(7, 1, "full").size() == 7);
    CHECK(kind_of([] { members(7, 1, "subgroup:4"); }) == ErrorKind::InvalidDescriptor);
    CHECK(kind_of([] { members(7, 1, "interval:1.5"); }) == ErrorKind::InvalidDescriptor);
    CHECK(kind_of([] { members(7, 1, "interval:0"); }) == ErrorKind::InvalidDescriptor);
    CHECK(ConditionDescriptor::parse("interval:0.5").to_string() == "interval:0.5");
  }

  TEST_CASE("uniformity metric fixtures") {
    CHECK(uniformity_metric(make_condition_set(10007, 1, ConditionDescriptor::full())) == 0.0);
    CHECK(std::abs(uniformity_metric(make_condition_set(10007, 1, ConditionDescriptor::interval(0.5))) -
                   2.0 / std::numbers::pi) < 0.01);
    CHECK(uniformity_metric(make_condition_set(10007, 1, ConditionDescriptor::parse("image:X^2"))) <=
          5.0 / std::sqrt(10007.0));
  }

  TEST_CASE("property: uniformity metric agrees with the direct maximum") {
    // Sizes on both sides of the direct/FFT threshold.
    for (u64 q : {61ULL, 4099ULL, 5003ULL}) {
      for (const char* d : {"interval:0.3", "image:X^3", "subgroup:2"}) {
        const ConditionSet A = make_condition_set(q, 1, ConditionDescriptor::parse(d));
        double best = 0.0;
        for (u64 h = 1; h < q; ++h) {
          cplx s = 0.0;
          for (u64 a : A.members) s += e(static_cast<double>(a * h % q) / q);
          best = std::max(best, std::abs(s) / A.members.size());
        }
        CAPTURE(q);
        CAPTURE(d);
        CHECK(std::abs(uniformity_metric(A) - best) < 1e-9);
      }
    }
  }

  TEST_CASE("restricted Weyl sum on the half interval") {
    const IntPoly g = P("X^3+X^2+2X+1");
    const u64 q = find_split_primes(g, 2000, 4000).front();
    // The roots sum to -1, so alpha = (1, 1, 1) gives c = -1 and the average
    // of e(-a/q) over the first half of the residues has modulus near 2/pi.
    const long alpha[] = {1, 1, 1};
    const ConditionSet A = make_condition_set(q, 1, ConditionDescriptor::interval(0.5));
    CHECK(std::abs(std::abs(weyl_sum(g, q, 1, alpha, A)) - 2.0 / std::numbers::pi) < 0.02);
  }
}
