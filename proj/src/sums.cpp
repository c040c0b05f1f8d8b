#include "ultrashort/sums.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "ultrashort/error.hpp"
#include "ultrashort/parallel.hpp"
#include "ultrashort/rng.hpp"

namespace ultrashort {
namespace {

void require_prime(u64 q) {
  if (!is_prime(q)) throw Error(ErrorKind::NonPrimeModulus, std::to_string(q) + " is not prime");
}

void require_grid_size(u64 points) {
  if (points > kMaxGridPoints) {
    throw Error(ErrorKind::TooLarge, std::to_string(points) + " parameters exceed the 2^26 grid limit; use sampling");
  }
}

// Inverses of 1..q-1 modulo the prime q in O(q).
std::vector<u64> inverse_table(u64 q) {
  std::vector<u64> inv(q, 0);
  if (q > 1) inv[1] = 1;
  for (u64 i = 2; i < q; ++i) inv[i] = mul_mod(q - q / i, inv[q % i], q);
  return inv;
}

std::vector<cplx> unit_root_table(u64 q) {
  std::vector<cplx> e(q);
  for (u64 k = 0; k < q; ++k) e[k] = unit_root(k, q);
  return e;
}

// Residues r^m mod q for each exponent (inverting when m < 0).
std::vector<std::vector<u64>> power_residues(const std::vector<u64>& roots, std::span<const int> exponents, u64 q) {
  std::vector<std::vector<u64>> out;
  for (int m : exponents) {
    std::vector<u64> row;
    for (u64 r : roots) {
      u64 base = r;
      if (m < 0) {
        const auto inv = inv_mod(r, q);
        if (!inv) throw Error(ErrorKind::NonInvertibleRoot, "root " + std::to_string(r) + " is not invertible");
        base = *inv;
      }
      row.push_back(pow_mod(base, static_cast<u64>(std::abs(m)), q));
    }
    out.push_back(std::move(row));
  }
  return out;
}

cplx root_sum(const std::vector<std::vector<u64>>& powers, const std::vector<u64>& a, u64 q) {
  cplx s = 0.0;
  const std::size_t d = powers.front().size();
  for (std::size_t j = 0; j < d; ++j) {
    u64 arg = 0;
    for (std::size_t i = 0; i < powers.size(); ++i) arg = add_mod(arg, mul_mod(a[i], powers[i][j], q), q);
    s += unit_root(arg, q);
  }
  return s;
}

std::vector<u64> mod_q_roots(const IntPoly& g, u64 q) { return split_roots(g, q, 1).roots; }

}  // namespace

std::string_view trace_mode_name(TraceMode mode) { return mode == TraceMode::Dilate ? "dilate" : "translate"; }

TraceMode parse_trace_mode(std::string_view name) {
  if (name == "dilate") return TraceMode::Dilate;
  if (name == "translate") return TraceMode::Translate;
  throw Error(ErrorKind::ParseError, "mode must be dilate or translate");
}

cplx unit_root(u64 k, u64 m) {
  k %= m;
  // Centre the argument in (-1/2, 1/2] before the single libm call.
  const double t = (2 * k > m) ? -static_cast<double>(m - k) / static_cast<double>(m)
                               : static_cast<double>(k) / static_cast<double>(m);
  const double angle = 2.0 * std::numbers::pi * t;
  return {std::cos(angle), std::sin(angle)};
}

std::vector<u64> value_residues(const IntPoly& g, u64 q, unsigned n, const LaurentPoly& v) {
  const RootList roots = split_roots(g, q, n);
  const u64 m = roots.modulus.value();
  std::vector<u64> out;
  for (u64 r : roots.roots) {
    u64 r_inv = 0;
    if (v.has_negative_exponent()) {
      const auto inv = inv_mod(r, m);
      if (!inv) throw Error(ErrorKind::NonInvertibleRoot, "root " + std::to_string(r) + " is not a unit");
      r_inv = *inv;
    }
    out.push_back(v.eval_mod(r, r_inv, m));
  }
  return out;
}

SumGrid additive_sum_grid(const IntPoly& g, u64 q, unsigned n, const LaurentPoly& v, unsigned threads) {
  const PrimePowerModulus modulus(q, n);
  const u64 m = modulus.value();
  require_grid_size(m);
  const std::vector<u64> c = value_residues(g, q, n, v);
  SumGrid grid{modulus, {}, std::vector<cplx>(m), {}, {g.to_string(), "additive", v.to_string(), {}, {}}};
  grid.params.resize(m);
  parallel_for(m, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      cplx s = 0.0;
      for (u64 ci : c) s += unit_root(mul_mod(a, ci, m), m);
      grid.params[a] = a;
      grid.values[a] = s;
    }
  });
  return grid;
}

std::vector<cplx> multi_param_sum_samples(const IntPoly& g, u64 q, std::span<const int> exponents, std::size_t count,
                                          u64 seed, unsigned threads) {
  if (exponents.empty()) throw Error(ErrorKind::InvalidArgument, "at least one exponent is required");
  if (count == 0) throw Error(ErrorKind::InvalidArgument, "count must be positive");
  const auto powers = power_residues(mod_q_roots(g, q), exponents, q);
  std::vector<cplx> out(count);
  parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<u64> a(exponents.size());
    for (std::size_t s = begin; s < end; ++s) {
      CounterRng rng(seed, Stream::MultiParam, s);
      for (auto& ai : a) ai = rng.below(q);
      out[s] = root_sum(powers, a, q);
    }
  });
  return out;
}

std::vector<cplx> multi_param_sum_grid(const IntPoly& g, u64 q, std::span<const int> exponents, unsigned threads) {
  if (exponents.empty()) throw Error(ErrorKind::InvalidArgument, "at least one exponent is required");
  u64 total = 1;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (total > kMaxGridPoints / q + 1) throw Error(ErrorKind::TooLarge, "parameter space exceeds the 2^26 grid limit");
    total *= q;
  }
  require_grid_size(total);
  const auto powers = power_residues(mod_q_roots(g, q), exponents, q);
  std::vector<cplx> out(total);
  parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<u64> a(exponents.size());
    for (std::size_t idx = begin; idx < end; ++idx) {
      u64 rest = idx;
      for (std::size_t i = a.size(); i-- > 0;) {
        a[i] = rest % q;
        rest /= q;
      }
      out[idx] = root_sum(powers, a, q);
    }
  });
  return out;
}

u64 discrete_log(u64 x, u64 gen, u64 q) {
  if (x % q == 0) throw Error(ErrorKind::VanishingValue, "discrete log of 0");
  const u64 order = q - 1;
  const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
  std::unordered_map<u64, u64> baby;
  u64 cur = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(cur, j);
    cur = mul_mod(cur, gen, q);
  }
  const u64 giant = pow_mod(*inv_mod(gen, q), m, q);
  u64 y = x % q;
  for (u64 i = 0; i <= m; ++i) {
    if (auto it = baby.find(y); it != baby.end()) return (i * m + it->second) % order;
    y = mul_mod(y, giant, q);
  }
  throw Error(ErrorKind::InvalidArgument, "generator does not generate the group");
}

SumGrid mult_char_sum_grid(const IntPoly& g, u64 q, const LaurentPoly& v, unsigned threads) {
  const std::vector<u64> values = value_residues(g, q, 1, v);
  const u64 gen = multiplicative_generator(q);
  std::vector<u64> logs;
  for (u64 y : values) {
    if (y == 0) throw Error(ErrorKind::VanishingValue, "v vanishes at a root mod " + std::to_string(q));
    logs.push_back(discrete_log(y, gen, q));
  }
  const u64 order = q - 1;
  SumGrid grid{PrimePowerModulus(q, 1), std::vector<u64>(order), std::vector<cplx>(order), {},
               {g.to_string(), "multiplicative", v.to_string(), {}, {}}};
  parallel_for(order, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      cplx s = 0.0;
      for (u64 l : logs) s += unit_root(mul_mod(t, l, order), order);
      grid.params[t] = t;
      grid.values[t] = s;
    }
  });
  return grid;
}

std::vector<cplx> kloosterman_table(int r, u64 q, unsigned threads) {
  require_prime(q);
  if (r < 2 || r > 8) throw Error(ErrorKind::OutOfRangeParameter, "rank r must be in [2, 8]");
  require_grid_size(q);
  const std::vector<cplx> e = unit_root_table(q);
  const std::vector<u64> inv = inverse_table(q);
  // Unnormalized K_1(b) = e(b/q) and K_k(a) = sum_x K_{k-1}(a/x) e(x/q).
  std::vector<cplx> prev(e), next(q);
  prev[0] = 0.0;
  for (int level = 2; level <= r; ++level) {
    parallel_for(q, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t a = std::max<std::size_t>(begin, 1); a < end; ++a) {
        cplx s = 0.0;
        for (u64 x = 1; x < q; ++x) s += prev[mul_mod(a, inv[x], q)] * e[x];
        next[a] = s;
      }
    });
    next[0] = 0.0;
    std::swap(prev, next);
  }
  const double scale = std::pow(static_cast<double>(q), -0.5 * (r - 1));
  for (auto& z : prev) z *= scale;
  return prev;
}

cplx hyper_kloosterman(int r, u64 a, u64 q) {
  require_prime(q);
  if (r < 2 || r > 8) throw Error(ErrorKind::OutOfRangeParameter, "rank r must be in [2, 8]");
  if (a < 1 || a >= q) throw Error(ErrorKind::OutOfRangeParameter, "a must lie in [1, q-1]");
  if (r > 3) return kloosterman_table(r, q)[a];
  const std::vector<u64> inv = inverse_table(q);
  cplx s = 0.0;
  if (r == 2) {
    for (u64 x = 1; x < q; ++x) s += unit_root(add_mod(x, mul_mod(a, inv[x], q), q), q);
  } else {
    for (u64 x = 1; x < q; ++x) {
      const u64 ax = mul_mod(a, inv[x], q);
      for (u64 y = 1; y < q; ++y) s += unit_root(add_mod(add_mod(x, y, q), mul_mod(ax, inv[y], q), q), q);
    }
  }
  return s * std::pow(static_cast<double>(q), -0.5 * (r - 1));
}

SumGrid trace_sum_grid(const IntPoly& g, u64 q, int r, TraceMode mode, unsigned threads) {
  const std::vector<u64> roots = mod_q_roots(g, q);
  if (mode == TraceMode::Dilate && std::find(roots.begin(), roots.end(), 0) != roots.end()) {
    throw Error(ErrorKind::ZeroRoot, "dilate mode needs 0 not a root mod " + std::to_string(q));
  }
  const std::vector<cplx> kl = kloosterman_table(r, q, threads);
  SumGrid grid{PrimePowerModulus(q, 1), {}, {}, {}, {g.to_string(), "kloosterman", {}, r, mode}};
  if (mode == TraceMode::Dilate) {
    grid.excluded = {0};
  } else {
    for (u64 x : roots) grid.excluded.push_back((q - x) % q);
    std::sort(grid.excluded.begin(), grid.excluded.end());
    grid.excluded.erase(std::unique(grid.excluded.begin(), grid.excluded.end()), grid.excluded.end());
  }
  for (u64 a = 0; a < q; ++a) {
    if (!std::binary_search(grid.excluded.begin(), grid.excluded.end(), a)) grid.params.push_back(a);
  }
  grid.values.resize(grid.params.size());
  parallel_for(grid.params.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const u64 a = grid.params[k];
      cplx s = 0.0;
      for (u64 x : roots) s += kl[mode == TraceMode::Dilate ? mul_mod(a, x, q) : add_mod(a, x, q)];
      grid.values[k] = s;
    }
  });
  return grid;
}

ConditionDescriptor ConditionDescriptor::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string arg = colon == std::string_view::npos ? "" : std::string(text.substr(colon + 1));
  try {
    if (head == "full") return full();
    if (head == "interval") return interval(std::stod(arg));
    if (head == "subgroup") return subgroup(std::stoull(arg));
    if (head == "image" || head == "polynomial_image") {
      const auto terms = parse_monomial_sum(arg);
      if (terms.empty() || terms.begin()->first < 0) throw Error(ErrorKind::InvalidDescriptor, "bad polynomial");
      std::vector<mpz_class> f(static_cast<std::size_t>(terms.rbegin()->first) + 1, 0);
      for (const auto& [k, c] : terms) f[static_cast<std::size_t>(k)] = c;
      return polynomial_image(std::move(f));
    }
  } catch (const std::logic_error&) {
    // stod / stoull failures fall through to the descriptor error.
  }
  throw Error(ErrorKind::InvalidDescriptor, "cannot parse condition descriptor '" + std::string(text) + "'");
}

std::string ConditionDescriptor::to_string() const {
  switch (kind) {
    case Kind::Full: return "full";
    case Kind::Interval: {
      std::string s = std::to_string(ratio);
      s.erase(s.find_last_not_of('0') + 1);
      if (s.back() == '.') s.pop_back();
      return "interval:" + s;
    }
    case Kind::PolynomialImage: {
      std::string out;
      for (std::size_t k = polynomial.size(); k-- > 0;) {
        const mpz_class& c = polynomial[k];
        if (c == 0) continue;
        if (!out.empty() && c > 0) out += "+";
        if (k == 0 || (c != 1 && c != -1)) out += c.get_str() + (k > 0 ? "*" : "");
        else if (c == -1) out += "-";
        if (k > 0) out += k == 1 ? "X" : "X^" + std::to_string(k);
      }
      return "image:" + out;
    }
    case Kind::Subgroup: return "subgroup:" + std::to_string(order);
  }
  return "full";
}

ConditionSet make_condition_set(u64 q, unsigned n, const ConditionDescriptor& descriptor) {
  const PrimePowerModulus modulus(q, n);
  const u64 m = modulus.value();
  require_grid_size(m);
  ConditionSet set{modulus, {}, descriptor};
  using Kind = ConditionDescriptor::Kind;
  switch (descriptor.kind) {
    case Kind::Full:
      set.members.resize(m);
      for (u64 a = 0; a < m; ++a) set.members[a] = a;
      break;
    case Kind::Interval: {
      if (!(descriptor.ratio > 0.0 && descriptor.ratio <= 1.0)) {
        throw Error(ErrorKind::InvalidDescriptor, "interval ratio must lie in (0, 1]");
      }
      // Guard against alpha q^n landing a hair above an integer.
      const double scaled = descriptor.ratio * static_cast<double>(m);
      u64 count = static_cast<u64>(std::ceil(scaled - 1e-9 * std::max(1.0, scaled)));
      count = std::clamp<u64>(count, 1, m);
      set.members.resize(count);
      for (u64 a = 0; a < count; ++a) set.members[a] = a;
      break;
    }
    case Kind::PolynomialImage: {
      const auto& f = descriptor.polynomial;
      if (f.empty() || f.back() != 1) throw Error(ErrorKind::InvalidDescriptor, "image polynomial must be monic");
      std::vector<u64> coeffs;
      for (const auto& c : f) {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), m);
        coeffs.push_back(r.get_ui());
      }
      std::vector<char> hit(m, 0);
      for (u64 b = 0; b < m; ++b) {
        u64 acc = 0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = add_mod(mul_mod(acc, b, m), coeffs[k], m);
        hit[acc] = 1;
      }
      for (u64 a = 0; a < m; ++a) {
        if (hit[a]) set.members.push_back(a);
      }
      break;
    }
    case Kind::Subgroup: {
      const u64 order = descriptor.order;
      if (n != 1 || order == 0 || (q - 1) % order != 0) {
        throw Error(ErrorKind::InvalidDescriptor, "subgroup order must divide q - 1 (and n = 1)");
      }
      const u64 h = pow_mod(multiplicative_generator(q), (q - 1) / order, q);
      u64 x = 1;
      for (u64 k = 0; k < order; ++k) {
        set.members.push_back(x);
        x = mul_mod(x, h, q);
      }
      std::sort(set.members.begin(), set.members.end());
      break;
    }
  }
  return set;
}

RootList aligned_roots(const IntPoly& g, u64 q, unsigned n, const RelationModule& R) {
  RootList roots = split_roots(g, q, n);
  const std::size_t d = roots.roots.size();
  if (R.ambient_rank != d) throw Error(ErrorKind::InvalidArgument, "relation module does not match the degree of g");
  const u64 m = roots.modulus.value();
  // Each row is tested as soon as its last nonzero position is assigned. An
  // echelon basis on reversed columns makes those positions as early as the
  // lattice allows, so most positions are forced by a row.
  IntMatrix reversed(R.basis.rows(), d);
  for (std::size_t r = 0; r < R.basis.rows(); ++r) {
    for (std::size_t c = 0; c < d; ++c) reversed(r, d - 1 - c) = R.basis(r, c);
  }
  const IntMatrix early = hermite_normal_form(reversed);
  std::vector<std::vector<std::vector<u64>>> rows_ending_at(d);
  for (std::size_t r = 0; r < early.rows(); ++r) {
    std::vector<u64> row(d);
    std::size_t last = 0;
    for (std::size_t c = 0; c < d; ++c) {
      const mpz_class& entry = early(r, d - 1 - c);
      mpz_class x = entry % mpz_class(m);
      if (x < 0) x += m;
      row[c] = x.get_ui();
      if (entry != 0) last = c;
    }
    rows_ending_at[last].push_back(std::move(row));
  }
  std::vector<u64> order(d);
  std::vector<bool> used(d, false);
  auto place = [&](auto&& self, std::size_t pos) -> bool {
    if (pos == d) return true;
    for (std::size_t k = 0; k < d; ++k) {
      if (used[k]) continue;
      order[pos] = roots.roots[k];
      bool ok = true;
      for (const auto& row : rows_ending_at[pos]) {
        u64 c = 0;
        for (std::size_t i = 0; i <= pos; ++i) c = add_mod(c, mul_mod(row[i], order[i], m), m);
        if (c != 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[k] = true;
      if (self(self, pos + 1)) return true;
      used[k] = false;
    }
    return false;
  };
  if (!place(place, 0)) {
    throw Error(ErrorKind::InvalidArgument, "no ordering of the roots mod " + std::to_string(m) +
                                                " satisfies the relation module; is it the module of g?");
  }
  roots.roots = std::move(order);
  return roots;
}

u64 weyl_residue(const RootList& roots, std::span<const long> alpha) {
  if (alpha.size() != roots.roots.size()) throw Error(ErrorKind::InvalidArgument, "alpha must have one entry per root");
  const u64 m = roots.modulus.value();
  u64 c = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) c = add_mod(c, mul_mod(reduce_signed(alpha[i], m), roots.roots[i], m), m);
  return c;
}

cplx weyl_sum(const RootList& roots, std::span<const long> alpha, const ConditionSet& A) {
  if (A.modulus != roots.modulus) throw Error(ErrorKind::InvalidArgument, "condition set modulus mismatch");
  const u64 c = weyl_residue(roots, alpha);
  const u64 m = A.modulus.value();
  if (A.members.size() == m) return c == 0 ? 1.0 : 0.0;
  cplx s = 0.0;
  for (u64 a : A.members) s += unit_root(mul_mod(a, c, m), m);
  return s / static_cast<double>(A.members.size());
}

u64 weyl_residue(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha, const RelationModule& R) {
  return weyl_residue(aligned_roots(g, q, n, R), alpha);
}

u64 weyl_residue(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha) {
  return weyl_residue(g, q, n, alpha, additive_relations(g));
}

int weyl_sum_full(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha, const RelationModule& R) {
  return weyl_residue(g, q, n, alpha, R) == 0 ? 1 : 0;
}

int weyl_sum_full(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha) {
  return weyl_sum_full(g, q, n, alpha, additive_relations(g));
}

cplx weyl_sum(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha, const ConditionSet& A,
              const RelationModule& R) {
  return weyl_sum(aligned_roots(g, q, n, R), alpha, A);
}

cplx weyl_sum(const IntPoly& g, u64 q, unsigned n, std::span<const long> alpha, const ConditionSet& A) {
  return weyl_sum(g, q, n, alpha, A, additive_relations(g));
}

double uniformity_metric(const ConditionSet& A) {
  const u64 m = A.modulus.value();
  const double size = static_cast<double>(A.members.size());
  if (A.members.size() == m || m == 1) return 0.0;
  double best = 0.0;
  if (m <= 4096) {
    for (u64 h = 1; h < m; ++h) {
      cplx s = 0.0;
      for (u64 a : A.members) s += unit_root(mul_mod(a, h, m), m);
      best = std::max(best, std::abs(s));
    }
    return best / size;
  }
  // FFTW handles arbitrary (including prime) lengths in O(m log m).
  static std::mutex planner_mutex;
  const std::size_t half = m / 2 + 1;
  double* in = fftw_alloc_real(m);
  fftw_complex* out = fftw_alloc_complex(half);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in, out, FFTW_ESTIMATE);
  }
  std::fill(in, in + m, 0.0);
  for (u64 a : A.members) in[a] = 1.0;
  fftw_execute(plan);
  // |X_h| = |X_{m-h}| for real input.
  for (std::size_t h = 1; h < half; ++h) best = std::max(best, std::hypot(out[h][0], out[h][1]));
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return best / size;
}

}  // namespace ultrashort
