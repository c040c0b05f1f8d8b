#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"
#include "ultrashort/limitlaw.hpp"
#include "ultrashort/stats.hpp"

using namespace ultrashort;
using testing::kind_of;

namespace {

IntPoly P(const char* s) { return IntPoly::parse(s); }

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("empirical mixed moment") {
    const std::vector<cplx> v{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    CHECK(std::abs(empirical_mixed_moment(v, 1, 0)) < 1e-15);
    CHECK(std::abs(empirical_mixed_moment(v, 1, 1) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(empirical_mixed_moment(v, 4, 0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(empirical_mixed_moment(v, 2, 0)) < 1e-15);
  }

  TEST_CASE("property: full additive grids have integer moments equal to the oracle") {
    for (const char* s : {"X^3+X+3", "X^3+2X^2+3", "X^4-X^2+1"}) {
      const IntPoly g = P(s);
      const RelationModule R = additive_relations(g);
      const u64 q = find_split_primes(g, 3000, 6000).front();
      const SumGrid grid = additive_sum_grid(g, q, 1, LaurentPoly::monomial(1));
      for (int m = 0; m <= 3; ++m) {
        for (int n = 0; m + n <= 4; ++n) {
          const cplx emp = empirical_mixed_moment(grid, m, n);
          const double scaled = emp.real() * static_cast<double>(q);
          CHECK(std::abs(scaled - std::round(scaled)) < 1e-4);
          CHECK(std::abs(emp - cplx(static_cast<double>(exact_mixed_moment(R, m, n)), 0.0)) < 1e-3);
          // Conjugation symmetry of the table.
          CHECK(std::abs(emp - std::conj(empirical_mixed_moment(grid, n, m))) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("stationarity report fixtures") {
    const IntPoly g = P("X^5-1");
    const RelationModule R = additive_relations(g);
    const std::vector<u64> primes{11, 31, 41};
    const auto rep = stationarity_report(g, primes, {{1, 1, 1, 1, 1}, {1, 0, 0, 0, 0}}, R);
    REQUIRE(rep.entries.size() == 6);
    for (const auto& e : rep.entries) {
      const bool ones = e.alpha[1] == 1;
      CHECK(e.weyl == (ones ? 1 : 0));
      CHECK(e.in_relations == ones);
    }
    CHECK(rep.disagreements() == 0);
    CHECK(kind_of([&] {
            const std::vector<u64> bad{7};
            stationarity_report(g, bad, {{1, 1, 1, 1, 1}}, R);
          }) == ErrorKind::NotSplit);
  }

  TEST_CASE("Kolmogorov-Smirnov distance") {
    const std::vector<double> a{1, 2, 3, 4}, b{1, 2, 3, 4}, c{10, 11};
    CHECK(ks_distance(a, b) == 0.0);
    CHECK(ks_distance(a, c) == 1.0);
    const std::vector<double> ties{0, 0, 1, 1}, half{0, 1};
    CHECK(ks_distance(ties, half) == 0.0);
    CHECK(kind_of([&] { ks_distance(a, std::vector<double>{}); }) == ErrorKind::InvalidArgument);
  }

  TEST_CASE("property: KS distance is symmetric, bounded and matches a brute-force sup") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> normal;
    std::uniform_int_distribution<int> coarse(0, 5);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> a(30 + trial), b(17 + 2 * trial);
      for (auto& x : a) x = trial % 2 ? normal(rng) : coarse(rng);
      for (auto& x : b) x = trial % 2 ? normal(rng) + 0.3 : coarse(rng);
      const double d = ks_distance(a, b);
      CHECK(d == ks_distance(b, a));
      CHECK(d >= 0.0);
      CHECK(d <= 1.0);
      double brute = 0.0;
      std::vector<double> pts(a);
      pts.insert(pts.end(), b.begin(), b.end());
      for (double t : pts) {
        const double fa = static_cast<double>(std::count_if(a.begin(), a.end(), [t](double x) { return x <= t; })) / a.size();
        const double fb = static_cast<double>(std::count_if(b.begin(), b.end(), [t](double x) { return x <= t; })) / b.size();
        brute = std::max(brute, std::abs(fa - fb));
      }
      CHECK(std::abs(d - brute) < 1e-15);
    }
  }

  TEST_CASE("binned L1 distance") {
    const std::vector<cplx> zero(10, cplx(0, 0)), one(10, cplx(1, 1));
    CHECK(binned_l1_2d(zero, zero, 8, 3.0) == 0.0);
    CHECK(binned_l1_2d(zero, one, 8, 3.0) == doctest::Approx(1.0));
    // Far-away points clamp into the corner bin.
    const std::vector<cplx> far(10, cplx(100, 100)), corner(10, cplx(2.99, 2.99));
    CHECK(binned_l1_2d(far, corner, 8, 3.0) == 0.0);
    CHECK(kind_of([&] { binned_l1_2d(zero, one, 3, 3.0); }) == ErrorKind::InvalidArgument);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    std::vector<cplx> a(500), b(700);
    for (auto& z : a) z = {normal(rng), normal(rng)};
    for (auto& z : b) z = {normal(rng), 0.5 * normal(rng)};
    const double d = binned_l1_2d(a, b, 20, 3.0);
    CHECK(d == doctest::Approx(binned_l1_2d(b, a, 20, 3.0)));
    CHECK(d > 0.0);
    CHECK(d <= 1.0);
  }

  TEST_CASE("conditioning experiment") {
    const IntPoly g = P("X^3+X^2+2X+1");
    const RelationModule R = additive_relations(g);
    const u64 q = find_split_primes(g, 10000, 12000).front();
    const ConditionSet half = make_condition_set(q, 1, ConditionDescriptor::interval(0.5));
    const auto rep = conditioning_experiment(g, q, 1, half, {{1, 1, 1}, {1, 0, 0}}, R);
    CHECK(rep.set_size == half.members.size());
    CHECK(std::abs(rep.uniformity - 2.0 / std::numbers::pi) < 0.01);
    REQUIRE(rep.weyl.size() == 2);
    CHECK_FALSE(rep.weyl[0].in_relations);
    CHECK(std::abs(std::abs(rep.weyl[0].value) - 2.0 / std::numbers::pi) < 0.02);
    // |S(a)|^2 averages to d over any set where the pairwise differences of
    // roots equidistribute; the half interval is close.
    CHECK(std::abs(rep.second_moment - 3.0) < 0.1);
    const ConditionSet full = make_condition_set(q, 1, ConditionDescriptor::full());
    const auto all = conditioning_experiment(g, q, 1, full, {{1, 1, 1}}, R);
    CHECK(all.uniformity == 0.0);
    CHECK(std::abs(all.second_moment - 3.0) < 1e-9);
    CHECK(all.weyl[0].value == cplx(0.0, 0.0));
  }
}
