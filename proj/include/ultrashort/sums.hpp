#pragma once

// Finite-field sum families over the roots of g modulo q^n.

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ultrashort/arith.hpp"
#include "ultrashort/poly.hpp"
#include "ultrashort/relations.hpp"

namespace ultrashort {

using cplx = std::complex<double>;

/// Parameter spaces above this many points are rejected.
inline constexpr u64 kMaxGridPoints = u64{1} << 26;

enum class TraceMode { Dilate, Translate };

std::string_view trace_mode_name(TraceMode mode);
TraceMode parse_trace_mode(std::string_view name);

struct SumMeta {
  std::string g;
  /// "additive", "multiplicative" or "kloosterman".
  std::string family;
  std::optional<std::string> v;
  std::optional<int> r;
  std::optional<TraceMode> mode;
};

/// values[k] is the sum at parameter params[k]; excluded parameters are omitted.
struct SumGrid {
  PrimePowerModulus modulus;
  std::vector<u64> params;
  std::vector<cplx> values;
  std::vector<u64> excluded;
  SumMeta meta;
};

/// e(k / m), with k reduced mod m in integers before the one libm call.
cplx unit_root(u64 k, u64 m);

/// Lifted roots r_i and the residues v(r_i) mod q^n.
std::vector<u64> value_residues(const IntPoly& g, u64 q, unsigned n, const LaurentPoly& v);

/// values[a] = sum_r e(a v(r) / q^n) for every a in [0, q^n).
SumGrid additive_sum_grid(const IntPoly& g, u64 q, unsigned n, const LaurentPoly& v, unsigned threads = 1);

/// S(a_1..a_k) = sum_r e((sum_i a_i r^{m_i}) / q) at `count` seeded uniform tuples.
std::vector<cplx> multi_param_sum_samples(const IntPoly& g, u64 q, std::span<const int> exponents, std::size_t count,
                                          u64 seed, unsigned threads = 1);

/// The same family over all q^k tuples in lexicographic order (a_1 slowest).
std::vector<cplx> multi_param_sum_grid(const IntPoly& g, u64 q, std::span<const int> exponents,
                                       unsigned threads = 1);

/// values[t] = sum_r chi_t(v(r)) with chi_t(gen^s) = e(s t / (q - 1)).
SumGrid mult_char_sum_grid(const IntPoly& g, u64 q, const LaurentPoly& v, unsigned threads = 1);

/// Discrete logarithm of x to the base gen modulo the prime q (baby-step giant-step).
u64 discrete_log(u64 x, u64 gen, u64 q);

/// Normalized hyper-Kloosterman sum Kl_r(a; q).
cplx hyper_kloosterman(int r, u64 a, u64 q);

/// Kl_r(b; q) for every b in [0, q); entry 0 is unused and set to 0.
std::vector<cplx> kloosterman_table(int r, u64 q, unsigned threads = 1);

/// sum_i Kl_r(a r_i; q) (dilate, a != 0) or sum_i Kl_r(a + r_i; q) (translate).
SumGrid trace_sum_grid(const IntPoly& g, u64 q, int r, TraceMode mode, unsigned threads = 1);

struct ConditionDescriptor {
  enum class Kind { Full, Interval, PolynomialImage, Subgroup };
  Kind kind = Kind::Full;
  double ratio = 1.0;
  /// Monic f, lowest degree first.
  std::vector<mpz_class> polynomial;
  u64 order = 0;

  static ConditionDescriptor full() { return {}; }
  static ConditionDescriptor interval(double ratio) { return {Kind::Interval, ratio, {}, 0}; }
  static ConditionDescriptor polynomial_image(std::vector<mpz_class> f) {
    return {Kind::PolynomialImage, 1.0, std::move(f), 0};
  }
  static ConditionDescriptor subgroup(u64 order) { return {Kind::Subgroup, 1.0, {}, order}; }

  /// "full", "interval:0.5", "image:X^2", "subgroup:3".
  static ConditionDescriptor parse(std::string_view text);
  std::string to_string() const;
};

struct ConditionSet {
  PrimePowerModulus modulus;
  std::vector<u64> members;
  ConditionDescriptor descriptor;
};

ConditionSet make_condition_set(u64 q, unsigned n, const ConditionDescriptor& descriptor);

/// Lifted roots mod q^n ordered so that root i is the reduction of complex
/// root i under some prime above q: every basis row of R (an additive relation
/// module of g in the certified root order) vanishes. Sorting alone is not
/// enough once R is not invariant under all permutations, e.g. X^6 - 1.
RootList aligned_roots(const IntPoly& g, u64 q, unsigned n, const RelationModule& R);

/// c = sum alpha_i r_i mod q^n.
u64 weyl_residue(const RootList& roots, std::span<const long> alpha);

/// (1/|A|) sum_{a in A} e(a c / q^n); exact 0 or 1 when A is the full set.
cplx weyl_sum(const RootList& roots, std::span<const long> alpha, const ConditionSet& A);

/// The forms below align against R; without R they compute additive_relations(g)
/// first, which dominates the cost.
u64 weyl_residue(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha, const RelationModule& R);
u64 weyl_residue(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha);

/// Exact full-grid Weyl sum: 1 if c == 0 else 0.
int weyl_sum_full(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha, const RelationModule& R);
int weyl_sum_full(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha);

cplx weyl_sum(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha, const ConditionSet& A,
              const RelationModule& R);
cplx weyl_sum(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha, const ConditionSet& A);

/// max over h != 0 of |sum_{a in A} e(a h / q^n)| / |A|.
double uniformity_metric(const ConditionSet& A);

}  // namespace ultrashort
