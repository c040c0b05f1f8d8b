// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ultrashort/arith.hpp"
#include "ultrashort/error.hpp"
#include "ultrashort/limitlaw.hpp"
#include "ultrashort/relations.hpp"
#include "ultrashort/rng.hpp"
#include "ultrashort/stats.hpp"
#include "ultrashort/sums.hpp"

using namespace ultrashort;

namespace {

unsigned g_threads = 1;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a sub-check; the first failure is named in the detail line.
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

IntPoly P(const char* s) { return IntPoly::parse(s); }
LaurentPoly L(const char* s) { return LaurentPoly::parse(s); }

// n primes spread evenly through the split primes of g in [lo, hi].
std::vector<u64> spread_split_primes(const IntPoly& g, u64 lo, u64 hi, std::size_t n) {
  const std::vector<u64> all = find_split_primes(g, lo, hi);
  if (all.size() <= n) return all;
  std::vector<u64> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(all[k * (all.size() - 1) / (n - 1)]);
  return out;
}

// Nonzero vectors with ||alpha||_1 <= l1 outside R, drawn from a fixed stream.
std::vector<std::vector<long>> random_non_relations(const RelationModule& R, std::size_t count, long l1,
                                                    std::uint64_t seed) {
  CounterRng rng(seed, Stream::TestVectors, R.ambient_rank);
  std::vector<std::vector<long>> out;
  while (out.size() < count) {
    std::vector<long> alpha(R.ambient_rank, 0);
    long budget = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(l1)));
    while (budget-- > 0) {
      alpha[rng.below(R.ambient_rank)] += rng.below(2) ? 1 : -1;
    }
    if (std::all_of(alpha.begin(), alpha.end(), [](long a) { return a == 0; })) continue;
    if (R.contains(std::span<const long>(alpha))) continue;
    if (std::find(out.begin(), out.end(), alpha) != out.end()) continue;
    out.push_back(alpha);
  }
  return out;
}

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

Outcome criterion1() {
  Outcome o;
  for (const char* s : {"X^3-1", "X^5-1", "X^7-1"}) {
    const RelationModule r = additive_relations(P(s));
    bool ones = r.rank() == 1;
    for (std::size_t c = 0; ones && c < r.ambient_rank; ++c) ones = r.basis(0, c) == 1;
    o.require(ones, std::string(s) + " basis (1,...,1)");
  }
  const std::size_t r6 = additive_relations(P("X^6-1")).rank();
  const std::size_t r_a = additive_relations(P("X^3+2X^2+3")).rank();
  const std::size_t r_b = additive_relations(P("X^3+X+3")).rank();
  const std::size_t r_v = value_relations(P("X^5-1"), L("X+X^-1")).rank();
  const long i1 = index_ind(P("X^3+X^2+2X+1")), i2 = index_ind(P("X^2+1")), i3 = index_ind(P("X-5"));
  o.require(r6 == 4, "rank X^6-1");
  o.require(r_a == 0, "rank X^3+2X^2+3");
  o.require(r_b == 1, "rank X^3+X+3");
  o.require(r_v == 3, "value rank X^5-1, X+X^-1");
  o.require(i1 == 1 && i2 == 0 && i3 == 5, "index values");
  o.detail << "ranks 1,1,1," << r6 << ',' << r_a << ',' << r_b << "; value rank " << r_v << "; ind " << i1 << ','
           << i2 << ',' << i3;
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t entries = 0, disagreements = 0, relation_hits = 0, relation_total = 0;
  for (const char* s : {"X^3-1", "X^5-1", "X^7-1", "X^6-1", "X^3+2X^2+3", "X^3+X+3"}) {
    const IntPoly g = P(s);
    const RelationModule R = additive_relations(g);
    const std::vector<u64> primes = spread_split_primes(g, 1000, 100000, 25);
    o.require(primes.size() == 25, std::string("25 split primes for ") + s);
    std::vector<std::vector<long>> alphas = R.basis.to_long();
    const std::size_t n_rel = alphas.size();
    for (auto& a : random_non_relations(R, 10, 4, 2024)) alphas.push_back(std::move(a));
    const StationarityReport rep = stationarity_report(g, primes, alphas, R);
    for (std::size_t k = 0; k < rep.entries.size(); ++k) {
      const auto& e = rep.entries[k];
      if (k % alphas.size() < n_rel) {
        ++relation_total;
        relation_hits += e.weyl == 1 ? 1 : 0;
      } else {
        o.require(e.weyl == 0, std::string(s) + " non-relation Weyl sum at q=" + std::to_string(e.q));
      }
    }
    entries += rep.entries.size();
    disagreements += rep.disagreements();
  }
  o.require(relation_hits == relation_total, "relation rows give 1");
  o.require(disagreements == 0, "zero disagreements");
  o.detail << entries << " exact Weyl sums, relation rows " << relation_hits << '/' << relation_total
           << " equal 1, disagreements " << disagreements;
  return o;
}

Outcome criterion3() {
  Outcome o;
  struct Case {
    const char* g;
    u64 q;
    double m30;
  };
  double worst_int = 0.0, worst_exact = 0.0;
  for (const Case& c : {Case{"X^3+X+3", 30223, 6.0}, Case{"X^3+2X^2+3", 30113, 0.0}}) {
    const IntPoly g = P(c.g);
    const RelationModule R = additive_relations(g);
    const SumGrid grid = additive_sum_grid(g, c.q, 1, L("X"), g_threads);
    o.require(grid.values.size() == c.q, "full grid");
    for (int m = 0; m <= 4; ++m) {
      for (int n = 0; m + n <= 4; ++n) {
        const cplx emp = empirical_mixed_moment(grid, m, n);
        const double qr = emp.real() * static_cast<double>(c.q), qi = emp.imag() * static_cast<double>(c.q);
        worst_int = std::max({worst_int, std::abs(qr - std::round(qr)), std::abs(qi - std::round(qi))});
        const double exact = static_cast<double>(exact_mixed_moment(R, m, n));
        worst_exact = std::max(worst_exact, std::abs(emp - cplx(exact, 0.0)));
      }
    }
    o.require(std::abs(empirical_mixed_moment(grid, 1, 1).real() - 3.0) < 1e-3, std::string(c.g) + " (1,1)");
    o.require(std::abs(empirical_mixed_moment(grid, 3, 0) - cplx(c.m30, 0.0)) < 1e-3, std::string(c.g) + " (3,0)");
  }
  o.require(worst_int < 1e-4, "q*moment integral");
  o.require(worst_exact < 1e-3, "moments equal the exact oracle");
  o.detail << "max |q*M - round| " << fmt(worst_int, 3) << ", max |M - exact| " << fmt(worst_exact, 3)
           << " over m+n<=4 for both cubics";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const SumGrid grid = trace_sum_grid(P("X^3-9X-1"), 8089, 2, TraceMode::Dilate, g_threads);
  double max_imag = 0.0, second = 0.0;
  std::vector<double> re;
  for (cplx z : grid.values) {
    max_imag = std::max(max_imag, std::abs(z.imag()));
    re.push_back(z.real());
    second += z.real() * z.real();
  }
  second /= static_cast<double>(re.size());
  const std::size_t draws = 1'000'000;
  const std::vector<double> st = sato_tate_samples(3 * draws, 44, g_threads);
  std::vector<double> sums(draws);
  for (std::size_t k = 0; k < draws; ++k) sums[k] = st[3 * k] + st[3 * k + 1] + st[3 * k + 2];
  const double ks = ks_distance(re, sums);
  o.require(max_imag <= 1e-9, "values real");
  o.require(ks <= 0.05, "KS distance");
  o.require(std::abs(second - 3.0) <= 0.1, "second moment");
  o.detail << grid.values.size() << " values, max |Im| " << fmt(max_imag, 3) << ", KS " << fmt(ks) << ", E S^2 "
           << fmt(second, 5);
  return o;
}

Outcome criterion5() {
  Outcome o;
  struct Case {
    const char* g;
    u64 q;
  };
  for (const Case& c : {Case{"X^3+2X^2+3", 30113}, Case{"X^3+X+3", 30223}}) {
    const IntPoly g = P(c.g);
    const RelationModule R = additive_relations(g);
    const SumGrid grid = additive_sum_grid(g, c.q, 1, L("X"), g_threads);
    const SampleBatch sigma = sigma_samples(torus_subgroup(R), 1'000'000, 55, g_threads);
    const double l1 = binned_l1_2d(grid.values, sigma.samples, 40, 3.0);
    o.require(l1 <= 0.08, std::string(c.g) + " binned L1");
    o.detail << c.g << " (rank " << R.rank() << ") L1 " << fmt(l1) << "; ";
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const IntPoly g = P("X^3+X^2+2X+1");
  const RelationModule R = additive_relations(g);
  const std::vector<u64> near = find_split_primes(g, 99000, 100000);
  o.require(!near.empty(), "split prime near 1e5");
  if (near.empty()) return o;
  const u64 q = near.back();
  // The roots sum to -1, so (1,1,1) is the relation with gamma(alpha) = -1.
  std::vector<std::vector<long>> alphas{{1, 1, 1}};
  for (auto& a : random_non_relations(R, 10, 4, 6)) {
    if (a != alphas[0]) alphas.push_back(std::move(a));
  }
  const ConditionSet half = make_condition_set(q, 1, ConditionDescriptor::interval(0.5));
  const ConditioningReport h = conditioning_experiment(g, q, 1, half, alphas, R);
  const double gamma_minus_one = std::abs(h.weyl[0].value);
  o.require(std::abs(h.uniformity - 0.6366) <= 0.01, "interval uniformity");
  o.require(std::abs(gamma_minus_one - 2.0 / std::numbers::pi) <= 0.02, "restricted Weyl sum at gamma = -1");
  const ConditionSet image = make_condition_set(q, 1, ConditionDescriptor::parse("image:X^2"));
  const ConditioningReport qr = conditioning_experiment(g, q, 1, image, alphas, R);
  double worst = 0.0;
  for (const auto& w : qr.weyl) {
    if (!w.in_relations) worst = std::max(worst, std::abs(w.value));
  }
  const double bound = 5.0 / std::sqrt(static_cast<double>(q));
  o.require(worst <= bound, "quadratic-residue Weyl sums");
  o.detail << "q=" << q << ", interval uniformity " << fmt(h.uniformity, 5) << ", |W(1,1,1)| "
           << fmt(gamma_minus_one, 5) << " (2/pi=" << fmt(2.0 / std::numbers::pi, 5) << "), QR max |W| "
           << fmt(worst, 3) << " <= " << fmt(bound, 3);
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (u64 q : {13ULL, 31ULL}) {
    const SumGrid grid = mult_char_sum_grid(P("X^3-1"), q, L("X"));
    const auto threes =
        std::count_if(grid.values.begin(), grid.values.end(), [](cplx z) { return std::abs(z - cplx(3, 0)) < 1e-9; });
    const auto zeros = std::count_if(grid.values.begin(), grid.values.end(), [](cplx z) { return std::abs(z) < 1e-9; });
    if (q == 13) {
      o.require(threes == 4 && zeros == 8, "q=13 counts");
    } else {
      o.require(threes == 10, "q=31 count");
    }
    o.detail << "q=" << q << ": " << threes << " equal 3, " << zeros << " vanish; ";
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  // Torus orthogonality on the relation modules of three fixtures.
  const std::uint64_t count = 100000;
  double worst_on = 0.0, worst_off = 0.0;
  for (const char* s : {"X^3+X+3", "X^6-1", "X^5-1"}) {
    const RelationModule R = additive_relations(P(s));
    const TorusSubgroup H = torus_subgroup(R);
    std::vector<std::vector<double>> draws(count);
    for (std::uint64_t k = 0; k < count; ++k) draws[k] = torus_angles(H, 808, k);
    auto mean_character = [&](const std::vector<long>& beta) {
      cplx acc = 0.0;
      for (const auto& t : draws) {
        double x = 0.0;
        for (std::size_t i = 0; i < beta.size(); ++i) x += static_cast<double>(beta[i]) * t[i];
        acc += std::polar(1.0, 2.0 * std::numbers::pi * x);
      }
      return acc / static_cast<double>(count);
    };
    for (const auto& alpha : R.basis.to_long()) worst_on = std::max(worst_on, std::abs(mean_character(alpha) - 1.0));
    CounterRng rng(31, Stream::TestVectors, R.ambient_rank);
    int tested = 0;
    while (tested < 20) {
      std::vector<long> beta(R.ambient_rank);
      for (auto& b : beta) b = static_cast<long>(rng.below(7)) - 3;
      if (R.contains(std::span<const long>(beta))) continue;
      worst_off = std::max(worst_off, std::abs(mean_character(beta)));
      ++tested;
    }
  }
  o.require(worst_on <= 1e-12, "characters on relations");
  o.require(worst_off <= 5.0 / std::sqrt(static_cast<double>(count)), "characters off relations");

  const std::vector<double> st = sato_tate_samples(1'000'000, 77, g_threads);
  double m2 = 0.0, m4 = 0.0;
  for (double t : st) {
    m2 += t * t;
    m4 += t * t * t * t;
  }
  m2 /= static_cast<double>(st.size());
  m4 /= static_cast<double>(st.size());
  o.require(std::abs(m2 - 1.0) <= 0.02, "Sato-Tate E t^2");
  o.require(std::abs(m4 - 2.0) <= 0.05, "Sato-Tate E t^4");

  const SampleBatch usp = haar_trace_samples(CompactGroup::USp, 2, 100000, 12, g_threads);
  std::vector<double> tr;
  for (cplx z : usp.samples) tr.push_back(z.real());
  const double ks = ks_distance(tr, sato_tate_samples(100000, 13, g_threads));
  o.require(ks <= 0.01, "USp(2) vs Sato-Tate KS");

  CounterRng rng(5, Stream::TestVectors, 0);
  double worst_conj = 0.0;
  for (int k = 0; k < 100; ++k) {
    u64 q = 0;
    while (!is_prime(q)) q = 5 + rng.below(996);
    const u64 a = 1 + rng.below(q - 1);
    worst_conj = std::max(worst_conj, std::abs(hyper_kloosterman(3, q - a, q) - std::conj(hyper_kloosterman(3, a, q))));
  }
  o.require(worst_conj <= 1e-9, "Kl3 conjugate symmetry");
  o.detail << "on-relation err " << fmt(worst_on, 3) << ", off-relation max " << fmt(worst_off, 3) << " <= "
           << fmt(5.0 / std::sqrt(static_cast<double>(count)), 3) << "; E t^2 " << fmt(m2, 5) << ", E t^4 "
           << fmt(m4, 5) << "; USp(2) KS " << fmt(ks, 3) << "; Kl3 conj err " << fmt(worst_conj, 3);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria runner"};
  std::vector<int> only;
  app.add_option("--threads", g_threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "relation fixtures", 10, criterion1},
      {2, "Weyl stationarity", 30, criterion2},
      {3, "moment stationarity", 60, criterion3},
      {4, "Kloosterman equidistribution", 300, criterion4},
      {5, "2D law match", 300, criterion5},
      {6, "conditioning", 120, criterion6},
      {7, "multiplicative degeneracy", 1, criterion7},
      {8, "sampler self-consistency", 120, criterion8},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    std::string detail = o.detail.str();
    while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
    failures += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.title,
                detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
