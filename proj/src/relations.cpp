#include "ultrashort/relations.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "ultrashort/error.hpp"

namespace ultrashort {
namespace {

enum class Verdict { Zero, NonZero, Undecided };

constexpr int kStartBits = 128;

// Roots at the highest precision requested so far.
class RootContext {
 public:
  RootContext(const IntPoly& g, int cap) : cap_(cap), roots_(certified_complex_roots(g, kStartBits, cap)) {}
  RootContext(CertifiedBoxList roots, int cap) : cap_(cap), roots_(std::move(roots)) {}

  const CertifiedBoxList& at(int bits) {
    if (bits > cap_) throw Error(ErrorKind::PrecisionExhausted, "needs " + std::to_string(bits) + " bits");
    if (roots_.precision_bits() < bits) roots_ = roots_.refined(bits, cap_);
    return roots_;
  }
  const CertifiedBoxList& current() const { return roots_; }
  int cap() const { return cap_; }

 private:
  int cap_;
  CertifiedBoxList roots_;
};

mpfr_prec_t box_precision(const CertifiedBoxList& roots) { return roots.precision_bits() + 32; }

// Values attached to each root: v(x_i), optionally followed by the constant 1.
struct ValueMap {
  LaurentPoly v;
  bool augment_one = false;

  std::size_t size(int d) const { return static_cast<std::size_t>(d) + (augment_one ? 1 : 0); }

  std::vector<CBox> evaluate(const CertifiedBoxList& roots) const {
    const mpfr_prec_t p = box_precision(roots);
    std::vector<CBox> out;
    for (const CBox& x : roots.cboxes()) {
      CBox acc = CBox::from_int(0, p);
      for (const auto& [k, c] : v.terms()) acc = acc + x.pow(k) * static_cast<long>(c);
      out.push_back(std::move(acc));
    }
    if (augment_one) out.push_back(CBox::from_int(1, p));
    return out;
  }
};

// v(x) = x^{-e} w(x) with w an integer polynomial.
int negative_order(const LaurentPoly& v) { return std::max(0, -v.min_exponent()); }

void require_nonzero_roots(const IntPoly& g, const LaurentPoly& v) {
  if (v.has_negative_exponent() && g.constant_term() == 0) {
    throw Error(ErrorKind::ZeroRootWithNegativeExponent, "0 is a root of " + g.to_string());
  }
}

long saturating_mul(long a, long b) { return (b != 0 && a > LONG_MAX / b) ? LONG_MAX : a * b; }

// Number of distinct rearrangements of the first d entries of alpha; an upper
// bound for the number of Galois conjugates of any expression F_alpha(roots).
long arrangement_count(std::span<const long> alpha, int d) {
  std::map<long, int> mult;
  for (int i = 0; i < d; ++i) ++mult[alpha[i]];
  // d! / prod m! computed as a product of binomials to stay in range.
  long count = 1;
  int placed = 0;
  for (const auto& [value, m] : mult) {
    long binom = 1;
    for (int k = 1; k <= m; ++k) {
      binom = saturating_mul(binom, placed + k);
      if (binom == LONG_MAX) return LONG_MAX;
      binom /= k;
    }
    placed += m;
    count = saturating_mul(count, binom);
  }
  return count;
}

long l1_norm(std::span<const long> alpha) {
  long a = 0;
  for (long x : alpha) a += std::labs(x);
  return a;
}

double log2_of(const BigFloat& x) {
  BigFloat out(64);
  mpfr_log2(out.get(), x.get(), MPFR_RNDN);
  return out.to_double();
}

// 1 / (base^{D-1} * scale), rounded down.
BigFloat inverse_power_bound(const BigFloat& base, long exponent, const BigFloat& scale) {
  BigFloat den(64);
  mpfr_pow_ui(den.get(), base.get(), static_cast<unsigned long>(exponent), MPFR_RNDU);
  mpfr_mul(den.get(), den.get(), scale.get(), MPFR_RNDU);
  BigFloat out(64);
  mpfr_ui_div(out.get(), 1, den.get(), MPFR_RNDD);
  return out;
}

struct LinearCheck {
  Verdict verdict;
  double log2_bound;
};

// Decides sum alpha_i y_i == 0 for values with N y_i algebraic integers.
//
// If nonzero, gamma = N sum alpha_i y_i is an algebraic integer of degree
// D <= min(degree_bound, arrangements of alpha) whose conjugates are the
// permuted sums, each of modulus <= A M with A = |alpha|_1 and
// M = max(1, N max|y_i|). The norm is a nonzero integer, so
// |sum alpha_i y_i| >= (A M)^{-(D-1)} / N =: L. A box containing 0 whose
// diameter is below L therefore certifies an exact zero.
LinearCheck linear_verdict(std::span<const long> alpha, const std::vector<CBox>& y, int d, const mpz_class& denom,
                           long degree_bound) {
  const mpfr_prec_t p = y.front().re().precision();
  CBox s = CBox::from_int(0, p);
  BigFloat max_abs(64, 1.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    max_abs = max_of(max_abs, y[i].abs_upper());
    if (alpha[i] != 0) s = s + y[i] * alpha[i];
  }
  BigFloat n_big(64);
  mpfr_set_z(n_big.get(), denom.get_mpz_t(), MPFR_RNDU);
  BigFloat m_bound = max_of(BigFloat(64, 1.0), mul_up(n_big, max_abs));
  BigFloat am(64);
  mpfr_mul_ui(am.get(), m_bound.get(), static_cast<unsigned long>(std::max(1L, l1_norm(alpha))), MPFR_RNDU);
  const long degree = std::min(degree_bound, arrangement_count(alpha, d));
  const BigFloat bound = inverse_power_bound(am, degree - 1, n_big);
  const double log2_bound = log2_of(bound);
  if (!s.contains_zero()) return {Verdict::NonZero, log2_bound};
  if (less_than(s.diameter(), bound)) return {Verdict::Zero, log2_bound};
  return {Verdict::Undecided, log2_bound};
}

// Decides prod y_i^alpha_i == 1 for y_i = v(x_i), v = x^{-e} w.
//
// Split alpha = alpha+ - alpha-. Then beta = P / Q with
// P = prod w(x_i)^{alpha+_i} x_i^{e alpha-_i}, Q = prod w(x_i)^{alpha-_i} x_i^{e alpha+_i},
// both algebraic integers bounded (with all conjugates) by K^A where
// K = max(1, max|w(x_j)|, max|x_j|^e). If beta != 1 then P - Q is a nonzero
// algebraic integer with conjugates bounded by 2 K^A <= (1 + K^A) K^A, so
// |beta - 1| = |P - Q| / |Q| >= ((1 + K^A) K^A)^{-(D-1)} K^{-A}.
LinearCheck multiplicative_verdict(std::span<const long> alpha, const std::vector<CBox>& y,
                                   const std::vector<CBox>& x, int e, long degree_bound) {
  const mpfr_prec_t p = y.front().re().precision();
  CBox beta = CBox::from_int(1, p);
  BigFloat k_bound(64, 1.0), root_bound(64, 1.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (alpha[i] != 0) {
      if (y[i].contains_zero()) return {Verdict::Undecided, 0.0};
      beta = beta * y[i].pow(alpha[i]);
    }
    CBox w = y[i] * x[i].pow(e);
    k_bound = max_of(k_bound, w.abs_upper());
    root_bound = max_of(root_bound, x[i].abs_upper());
  }
  BigFloat root_pow(64);
  mpfr_pow_ui(root_pow.get(), root_bound.get(), static_cast<unsigned long>(e), MPFR_RNDU);
  k_bound = max_of(k_bound, root_pow);
  const long a = std::max(1L, l1_norm(alpha));
  BigFloat ka(64), base(64);
  mpfr_pow_ui(ka.get(), k_bound.get(), static_cast<unsigned long>(a), MPFR_RNDU);
  mpfr_add_ui(base.get(), ka.get(), 1, MPFR_RNDU);
  mpfr_mul(base.get(), base.get(), ka.get(), MPFR_RNDU);
  const long degree = std::min(degree_bound, arrangement_count(alpha, static_cast<int>(alpha.size())));
  const BigFloat bound = inverse_power_bound(base, degree - 1, ka);
  const double log2_bound = log2_of(bound);
  const CBox diff = beta - CBox::from_int(1, p);
  if (!diff.contains_zero()) return {Verdict::NonZero, log2_bound};
  if (less_than(diff.diameter(), bound)) return {Verdict::Zero, log2_bound};
  return {Verdict::Undecided, log2_bound};
}

// Runs check at the current precision, then at the precision suggested by the
// bound, then doubling until decided or the cap is reached.
template <class Check>
std::pair<bool, double> decide(RootContext& ctx, long a, Check check) {
  int bits = ctx.current().precision_bits();
  LinearCheck result = check(ctx.at(bits));
  if (result.verdict == Verdict::Undecided) {
    const int needed = static_cast<int>(std::ceil(-result.log2_bound)) + 2 * static_cast<int>(std::log2(a + 1.0)) + 64;
    bits = std::max(2 * bits, std::min(needed, ctx.cap()));
  }
  while (result.verdict == Verdict::Undecided) {
    if (bits > ctx.cap()) throw Error(ErrorKind::PrecisionExhausted, "relation test undecided at the precision cap");
    result = check(ctx.at(bits));
    bits *= 2;
  }
  return {result.verdict == Verdict::Zero, result.log2_bound};
}

mpz_class value_denominator(const IntPoly& g, const LaurentPoly& v) {
  mpz_class n = 1;
  const int e = negative_order(v);
  if (e > 0) {
    mpz_class c = abs(g.constant_term());
    mpz_pow_ui(n.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(e));
  }
  return n;
}

std::pair<bool, double> decide_linear(RootContext& ctx, const IntPoly& g, const ValueMap& map,
                                      std::span<const long> alpha, long degree_bound) {
  const mpz_class denom = value_denominator(g, map.v);
  return decide(ctx, l1_norm(alpha), [&](const CertifiedBoxList& roots) {
    return linear_verdict(alpha, map.evaluate(roots), g.degree(), denom, degree_bound);
  });
}

std::pair<bool, double> decide_multiplicative(RootContext& ctx, const LaurentPoly& v, std::span<const long> alpha,
                                              long degree_bound) {
  const ValueMap map{v, false};
  return decide(ctx, l1_norm(alpha), [&](const CertifiedBoxList& roots) {
    return multiplicative_verdict(alpha, map.evaluate(roots), roots.cboxes(), negative_order(v), degree_bound);
  });
}

BigFloat box_midpoint(const Interval& x) {
  BigFloat mid(x.precision() + 2);
  mpfr_add(mid.get(), x.lo().get(), x.hi().get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  return mid;
}

mpz_class scaled_round(const BigFloat& x, int bits) {
  BigFloat t(x.precision() + bits);
  mpfr_mul_2si(t.get(), x.get(), bits, MPFR_RNDN);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), t.get(), MPFR_RNDN);
  return z;
}

std::vector<long> to_long_vector(const std::vector<mpz_class>& v) {
  std::vector<long> out;
  for (const auto& x : v) {
    if (!x.fits_slong_p()) throw Error(ErrorKind::TooLarge, "relation coefficient exceeds 64 bits");
    out.push_back(x.get_si());
  }
  return out;
}

// Shared driver: LLL candidates at lattice scale 2^B, certification, then
// saturation; B doubles until the lattice is unchanged for the requested
// number of consecutive escalations.
class RelationSearch {
 public:
  RelationSearch(const IntPoly& g, ValueMap map, bool multiplicative, const RelationOptions& options)
      : g_(g),
        map_(std::move(map)),
        multiplicative_(multiplicative),
        options_(options),
        n_(map_.size(g.degree())),
        degree_bound_(options.degree_bound.value_or(factorial_bound(g.degree()))),
        ctx_(g, options.precision_cap) {}

  RelationModule run(RelationKind kind) {
    if (multiplicative_) check_nonvanishing();
    int bits = options_.initial_bits > 0 ? options_.initial_bits : 48 + 16 * static_cast<int>(n_);
    IntMatrix module(0, n_);
    int stable = -1;
    for (;;) {
      const int root_bits = 2 * bits + 64;
      if (root_bits > options_.precision_cap) {
        throw Error(ErrorKind::PrecisionExhausted, "relation search did not stabilise below the precision cap");
      }
      search_at(bits, root_bits);
      IntMatrix next = current_module();
      stable = (next == module && stable >= 0) ? stable + 1 : 0;
      module = std::move(next);
      if (stable >= options_.stable_escalations || module.rows() == n_) break;
      bits *= 2;
    }
    RelationModule out;
    out.ambient_rank = n_;
    out.basis = module;
    out.kind = kind;
    out.certificate.degree_bound = degree_bound_;
    out.certificate.coefficient_cap = options_.coefficient_cap;
    out.certificate.stable_escalations = stable;
    out.certificate.log2_lower_bound = 0.0;
    // Every basis row is certified on its own, not only the LLL candidates.
    for (std::size_t r = 0; r < module.rows(); ++r) {
      const auto alpha = to_long_vector(module.row(r));
      const auto [holds, log2_bound] = test(alpha);
      if (!holds) throw Error(ErrorKind::PrecisionExhausted, "saturated basis row failed certification");
      out.certificate.log2_lower_bound = std::min(out.certificate.log2_lower_bound, log2_bound);
    }
    out.certificate.precision_bits = ctx_.current().precision_bits();
    return out;
  }

 private:
  std::pair<bool, double> test(std::span<const long> alpha) {
    return multiplicative_ ? decide_multiplicative(ctx_, map_.v, alpha, degree_bound_)
                           : decide_linear(ctx_, g_, map_, alpha, degree_bound_);
  }

  void check_nonvanishing() {
    // v(x) = 0 at a root iff the numerator x^e v(x) shares a factor with g.
    const int e = negative_order(map_.v);
    std::vector<mpz_class> w(static_cast<std::size_t>(map_.v.max_exponent() + e + 1), 0);
    for (const auto& [k, c] : map_.v.terms()) w[static_cast<std::size_t>(k + e)] = c;
    if (resultant(g_.coefficients(), w) == 0) {
      throw Error(ErrorKind::VanishingValue, "v vanishes at a root of " + g_.to_string());
    }
  }

  void search_at(int bits, int root_bits) {
    const CertifiedBoxList& roots = ctx_.at(root_bits);
    const std::vector<CBox> y = map_.evaluate(roots);
    const std::size_t extra = multiplicative_ ? 1 : 0;
    const std::size_t rows = n_ + extra;
    IntMatrix lattice(rows, rows + 2);
    for (std::size_t i = 0; i < rows; ++i) lattice(i, i) = 1;
    if (multiplicative_) {
      const auto [logs, args] = log_arg(y, bits);
      for (std::size_t i = 0; i < n_; ++i) {
        lattice(i, rows) = logs[i];
        lattice(i, rows + 1) = args[i];
      }
      lattice(n_, rows + 1) = scaled_round(two_pi(roots), bits);
    } else {
      for (std::size_t i = 0; i < n_; ++i) {
        lattice(i, rows) = scaled_round(box_midpoint(y[i].re()), bits);
        lattice(i, rows + 1) = scaled_round(box_midpoint(y[i].im()), bits);
      }
    }
    const IntMatrix reduced = lll_reduce(lattice);
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
      std::vector<long> alpha;
      bool in_range = true;
      for (std::size_t i = 0; i < n_ && in_range; ++i) {
        const mpz_class& c = reduced(r, i);
        in_range = abs(c) <= options_.coefficient_cap;
        if (in_range) alpha.push_back(c.get_si());
      }
      if (!in_range || std::all_of(alpha.begin(), alpha.end(), [](long a) { return a == 0; })) continue;
      // Rounding contributes at most |alpha|_1 / 2 per residual column; the
      // winding column adds up to 7 |w| / 2 more.
      mpz_class slack = l1_norm(alpha) / 2 + 2;
      if (multiplicative_) slack += 4 * abs(reduced(r, n_));
      if (abs(reduced(r, rows)) > slack || abs(reduced(r, rows + 1)) > slack) continue;
      if (std::find(found_.begin(), found_.end(), alpha) != found_.end()) continue;
      if (test(alpha).first) found_.push_back(alpha);
    }
  }

  BigFloat two_pi(const CertifiedBoxList& roots) const {
    BigFloat pi(box_precision(roots));
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    mpfr_mul_2ui(pi.get(), pi.get(), 1, MPFR_RNDN);
    return pi;
  }

  std::pair<std::vector<mpz_class>, std::vector<mpz_class>> log_arg(const std::vector<CBox>& y, int bits) const {
    std::vector<mpz_class> logs, args;
    for (const CBox& yi : y) {
      const BigFloat re = box_midpoint(yi.re()), im = box_midpoint(yi.im());
      BigFloat mod(re.precision()), arg(re.precision());
      mpfr_hypot(mod.get(), re.get(), im.get(), MPFR_RNDN);
      mpfr_log(mod.get(), mod.get(), MPFR_RNDN);
      mpfr_atan2(arg.get(), im.get(), re.get(), MPFR_RNDN);
      logs.push_back(scaled_round(mod, bits));
      args.push_back(scaled_round(arg, bits));
    }
    return {logs, args};
  }

  // HNF basis of the saturation of everything certified so far.
  IntMatrix current_module() const {
    if (!multiplicative_) {
      IntMatrix m(0, n_);
      for (const auto& a : found_) {
        std::vector<mpz_class> row(a.begin(), a.end());
        m.append_row(row);
      }
      return saturate(m, n_);
    }
    // The lattice {(alpha, w) : sum alpha_i Log y_i + 2 pi i w = 0} is
    // saturated in Z^{n+1} and projects injectively onto the relations, so
    // saturate there (with the current branch of arg) and project.
    const CertifiedBoxList& roots = ctx_.current();
    const std::vector<CBox> y = map_.evaluate(roots);
    std::vector<double> theta;
    for (const CBox& yi : y) {
      theta.push_back(std::atan2(yi.im().midpoint_double(), yi.re().midpoint_double()));
    }
    IntMatrix m(0, n_ + 1);
    for (const auto& a : found_) {
      double turn = 0.0;
      for (std::size_t i = 0; i < n_; ++i) turn += static_cast<double>(a[i]) * theta[i];
      std::vector<mpz_class> row(a.begin(), a.end());
      row.push_back(static_cast<long>(std::lround(-turn / (2.0 * std::numbers::pi))));
      m.append_row(row);
    }
    const IntMatrix sat = saturate(m, n_ + 1);
    IntMatrix projected(0, n_);
    for (std::size_t r = 0; r < sat.rows(); ++r) {
      auto row = sat.row(r);
      row.pop_back();
      projected.append_row(row);
    }
    return hermite_normal_form(projected);
  }

  const IntPoly& g_;
  ValueMap map_;
  bool multiplicative_;
  RelationOptions options_;
  std::size_t n_;
  long degree_bound_;
  RootContext ctx_;
  std::vector<std::vector<long>> found_;
};

RelationModule value_module(const IntPoly& g, const LaurentPoly& v, const RelationOptions& options,
                            RelationKind kind) {
  require_nonzero_roots(g, v);
  return RelationSearch(g, ValueMap{v, false}, false, options).run(kind);
}

}  // namespace

std::string_view relation_kind_name(RelationKind kind) {
  switch (kind) {
    case RelationKind::Additive: return "additive";
    case RelationKind::Value: return "value";
    case RelationKind::Joint: return "joint";
    case RelationKind::Multiplicative: return "multiplicative";
  }
  return "additive";
}

RelationKind parse_relation_kind(std::string_view name) {
  for (auto k : {RelationKind::Additive, RelationKind::Value, RelationKind::Joint, RelationKind::Multiplicative}) {
    if (relation_kind_name(k) == name) return k;
  }
  throw Error(ErrorKind::ParseError, "unknown relation kind '" + std::string(name) + "'");
}

bool RelationModule::contains(std::span<const mpz_class> alpha) const {
  if (alpha.size() != ambient_rank) return false;
  return lattice_contains(basis, alpha);
}

bool RelationModule::contains(std::span<const long> alpha) const {
  std::vector<mpz_class> v(alpha.begin(), alpha.end());
  return contains(std::span<const mpz_class>(v));
}

long factorial_bound(int d) {
  long f = 1;
  for (int k = 2; k <= d; ++k) f = saturating_mul(f, k);
  return f;
}

bool gamma_is_zero(std::span<const long> alpha, const CertifiedBoxList& roots, long degree_bound, int precision_cap) {
  return value_relation_holds(alpha, roots, LaurentPoly::monomial(1), degree_bound, precision_cap);
}

bool value_relation_holds(std::span<const long> alpha, const CertifiedBoxList& roots, const LaurentPoly& v,
                          long degree_bound, int precision_cap) {
  if (alpha.size() != static_cast<std::size_t>(roots.degree())) {
    throw Error(ErrorKind::InvalidArgument, "alpha must have one entry per root");
  }
  if (degree_bound < 1) throw Error(ErrorKind::InvalidArgument, "degree_bound must be positive");
  require_nonzero_roots(roots.poly(), v);
  RootContext ctx(roots, precision_cap);
  return decide_linear(ctx, roots.poly(), ValueMap{v, false}, alpha, degree_bound).first;
}

bool multiplicative_relation_holds(std::span<const long> alpha, const CertifiedBoxList& roots,
                                   const LaurentPoly& v, long degree_bound, int precision_cap) {
  if (alpha.size() != static_cast<std::size_t>(roots.degree())) {
    throw Error(ErrorKind::InvalidArgument, "alpha must have one entry per root");
  }
  require_nonzero_roots(roots.poly(), v);
  RootContext ctx(roots, precision_cap);
  return decide_multiplicative(ctx, v, alpha, degree_bound).first;
}

RelationModule additive_relations(const IntPoly& g, const RelationOptions& options) {
  return value_module(g, LaurentPoly::monomial(1), options, RelationKind::Additive);
}

RelationModule value_relations(const IntPoly& g, const LaurentPoly& v, const RelationOptions& options) {
  if (v.is_constant()) throw Error(ErrorKind::InvalidArgument, "v must be nonconstant");
  return value_module(g, v, options, RelationKind::Value);
}

RelationModule joint_power_relations(const IntPoly& g, std::span<const int> exponents,
                                     const RelationOptions& options) {
  if (exponents.empty()) throw Error(ErrorKind::InvalidArgument, "at least one exponent is required");
  std::vector<int> sorted(exponents.begin(), exponents.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorKind::InvalidArgument, "exponents must be distinct");
  }
  std::vector<IntMatrix> lattices;
  RelationCertificate cert;
  for (int m : sorted) {
    // m = 0 gives the constant values 1, whose relations are sum alpha_i = 0.
    const RelationModule part = value_module(g, LaurentPoly::monomial(m), options, RelationKind::Value);
    lattices.push_back(part.basis);
    cert.precision_bits = std::max(cert.precision_bits, part.certificate.precision_bits);
    cert.degree_bound = part.certificate.degree_bound;
    cert.log2_lower_bound = std::min(cert.log2_lower_bound, part.certificate.log2_lower_bound);
    cert.coefficient_cap = part.certificate.coefficient_cap;
    cert.stable_escalations = cert.stable_escalations == 0 ? part.certificate.stable_escalations
                                                           : std::min(cert.stable_escalations,
                                                                      part.certificate.stable_escalations);
  }
  const std::size_t d = static_cast<std::size_t>(g.degree());
  RelationModule out;
  out.ambient_rank = d;
  out.basis = intersect_saturated(lattices, d);
  out.kind = RelationKind::Joint;
  out.certificate = cert;
  return out;
}

RelationModule multiplicative_relations(const IntPoly& g, const LaurentPoly& v, const RelationOptions& options) {
  require_nonzero_roots(g, v);
  if (v.terms().empty()) throw Error(ErrorKind::VanishingValue, "v is identically zero");
  return RelationSearch(g, ValueMap{v, false}, true, options).run(RelationKind::Multiplicative);
}

long index_ind(const IntPoly& g, const RelationOptions& options) {
  // A relation sum alpha_i x_i + c = 0 exhibits -c in the image of gamma.
  const RelationModule augmented =
      RelationSearch(g, ValueMap{LaurentPoly::monomial(1), true}, false, options).run(RelationKind::Additive);
  mpz_class ind = 0;
  const std::size_t last = augmented.ambient_rank - 1;
  for (std::size_t r = 0; r < augmented.basis.rows(); ++r) ind = gcd(ind, augmented.basis(r, last));
  return mpz_class(abs(ind)).get_si();
}

bool dominant_root_holds(const IntPoly& g, int precision_cap) {
  const int d = g.degree();
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "dominant_root_holds needs degree >= 2");
  RootContext ctx(g, precision_cap);
  for (int bits = kStartBits;; bits *= 2) {
    if (bits > precision_cap) throw Error(ErrorKind::PrecisionExhausted, "root moduli tie at the precision cap");
    const CertifiedBoxList& roots = ctx.at(bits);
    const auto& boxes = roots.boxes();
    const std::vector<CBox> cb = roots.cboxes();
    bool undecided = false;
    for (int i = 0; i < d; ++i) {
      // A non-real root shares its modulus with its conjugate, another root.
      // conj(x_i) is a root; if the mirrored disc meets no other disc it is x_i.
      bool real = true;
      for (int j = 0; j < d && real; ++j) {
        if (j == i) continue;
        CBox mirrored(cb[i].re(), -cb[i].im());
        const BigFloat gap = (mirrored - cb[j]).abs_lower();
        if (!less_than(add_up(boxes[i].radius, boxes[j].radius), gap)) real = false;
      }
      if (!real) {
        if (cb[i].im().contains_zero()) undecided = true;
        continue;
      }
      BigFloat others(64);
      BigFloat others_low(64);
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        others = add_up(others, cb[j].abs_upper());
        BigFloat low = cb[j].abs_lower();
        mpfr_add(others_low.get(), others_low.get(), low.get(), MPFR_RNDD);
      }
      const BigFloat self_low = cb[i].abs_lower();
      const BigFloat self_high = cb[i].abs_upper();
      if (less_than(others, self_low)) return true;
      if (!less_than(self_high, others_low) && mpfr_cmp(self_high.get(), others_low.get()) != 0) undecided = true;
    }
    if (!undecided) return false;
  }
}

}  // namespace ultrashort
