#include "ultrashort/complex_roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "ultrashort/error.hpp"

namespace ultrashort {
namespace {

// Round-to-nearest complex arithmetic for the approximation phase only.
struct Cplx {
  BigFloat re, im;
  explicit Cplx(mpfr_prec_t p) : re(p), im(p) {}
};

void set_prec(Cplx& z, mpfr_prec_t p) {
  z.re.set_precision(p);
  z.im.set_precision(p);
}

void cmul(Cplx& out, const Cplx& a, const Cplx& b, BigFloat& t1, BigFloat& t2) {
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  BigFloat re(out.re.precision());
  mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  out.re = std::move(re);
}

void cdiv(Cplx& out, const Cplx& a, const Cplx& b, mpfr_prec_t p) {
  BigFloat den(p), t1(p), t2(p), re(p), im(p);
  mpfr_sqr(t1.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t2.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(den.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), re.get(), den.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), im.get(), den.get(), MPFR_RNDN);
}

mpfr_exp_t magnitude_exp(const Cplx& z) {
  mpfr_exp_t e = std::numeric_limits<mpfr_exp_t>::min() / 2;
  if (!mpfr_zero_p(z.re.get())) e = std::max(e, mpfr_get_exp(z.re.get()));
  if (!mpfr_zero_p(z.im.get())) e = std::max(e, mpfr_get_exp(z.im.get()));
  return e;
}

// Aberth-Ehrlich iteration; returns true once every correction is below
// 2^{8-p} relative to max(1, |z|).
bool aberth(const IntPoly& g, std::vector<Cplx>& z, mpfr_prec_t p, int max_iterations) {
  const int d = g.degree();
  std::vector<BigFloat> coeffs;
  for (const auto& c : g.coefficients()) {
    BigFloat x(p);
    mpfr_set_z(x.get(), c.get_mpz_t(), MPFR_RNDN);
    coeffs.push_back(std::move(x));
  }
  for (auto& zi : z) set_prec(zi, p);
  BigFloat t1(p), t2(p);
  Cplx val(p), dval(p), ratio(p), sum(p), tmp(p), diff(p), one(p), w(p);
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  std::vector<Cplx> corrections(d, Cplx(p));
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool converged = true;
    for (int i = 0; i < d; ++i) {
      // Horner for g and g'.
      mpfr_set(val.re.get(), coeffs[d].get(), MPFR_RNDN);
      mpfr_set_zero(val.im.get(), 1);
      mpfr_set_zero(dval.re.get(), 1);
      mpfr_set_zero(dval.im.get(), 1);
      for (int k = d - 1; k >= 0; --k) {
        cmul(dval, dval, z[i], t1, t2);
        mpfr_add(dval.re.get(), dval.re.get(), val.re.get(), MPFR_RNDN);
        mpfr_add(dval.im.get(), dval.im.get(), val.im.get(), MPFR_RNDN);
        cmul(val, val, z[i], t1, t2);
        mpfr_add(val.re.get(), val.re.get(), coeffs[k].get(), MPFR_RNDN);
      }
      Cplx& w_i = corrections[i];
      if (mpfr_zero_p(val.re.get()) && mpfr_zero_p(val.im.get())) {
        mpfr_set_zero(w_i.re.get(), 1);
        mpfr_set_zero(w_i.im.get(), 1);
        continue;
      }
      cdiv(ratio, val, dval, p);  // N_i = g/g'
      mpfr_set_zero(sum.re.get(), 1);
      mpfr_set_zero(sum.im.get(), 1);
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        mpfr_sub(diff.re.get(), z[i].re.get(), z[j].re.get(), MPFR_RNDN);
        mpfr_sub(diff.im.get(), z[i].im.get(), z[j].im.get(), MPFR_RNDN);
        cdiv(tmp, one, diff, p);
        mpfr_add(sum.re.get(), sum.re.get(), tmp.re.get(), MPFR_RNDN);
        mpfr_add(sum.im.get(), sum.im.get(), tmp.im.get(), MPFR_RNDN);
      }
      // w = N / (1 - N * sum)
      cmul(tmp, ratio, sum, t1, t2);
      mpfr_ui_sub(tmp.re.get(), 1, tmp.re.get(), MPFR_RNDN);
      mpfr_neg(tmp.im.get(), tmp.im.get(), MPFR_RNDN);
      cdiv(w_i, ratio, tmp, p);
      const mpfr_exp_t scale = std::max<mpfr_exp_t>(1, magnitude_exp(z[i]));
      if (!(mpfr_zero_p(w_i.re.get()) && mpfr_zero_p(w_i.im.get())) && magnitude_exp(w_i) > scale - p + 8) {
        converged = false;
      }
      if (!mpfr_number_p(w_i.re.get()) || !mpfr_number_p(w_i.im.get())) {
        // Collision of two iterates; nudge and keep going.
        mpfr_set_d(w_i.re.get(), 1e-3 * (i + 1), MPFR_RNDN);
        mpfr_set_d(w_i.im.get(), 1e-3, MPFR_RNDN);
        converged = false;
      }
    }
    for (int i = 0; i < d; ++i) {
      mpfr_sub(z[i].re.get(), z[i].re.get(), corrections[i].re.get(), MPFR_RNDN);
      mpfr_sub(z[i].im.get(), z[i].im.get(), corrections[i].im.get(), MPFR_RNDN);
    }
    if (converged) return true;
  }
  return false;
}

std::vector<Cplx> initial_points(const IntPoly& g, mpfr_prec_t p) {
  const int d = g.degree();
  // Fujiwara-style bound 2 max |c_k|^{1/(d-k)}, rounded up to a power of two.
  long exponent = 1;
  for (int k = 0; k < d; ++k) {
    const mpz_class& c = g.coefficients()[k];
    if (c == 0) continue;
    const double bits = static_cast<double>(mpz_sizeinbase(c.get_mpz_t(), 2));
    exponent = std::max(exponent, static_cast<long>(std::ceil(bits / (d - k))) + 1);
  }
  std::vector<Cplx> z;
  BigFloat radius(p), angle(p);
  mpfr_set_ui_2exp(radius.get(), 1, exponent, MPFR_RNDN);
  for (int k = 0; k < d; ++k) {
    Cplx zk(p);
    mpfr_const_pi(angle.get(), MPFR_RNDN);
    mpfr_mul_d(angle.get(), angle.get(), 2.0 * k / d + 0.4 / d + 0.1, MPFR_RNDN);
    mpfr_sin_cos(zk.im.get(), zk.re.get(), angle.get(), MPFR_RNDN);
    mpfr_mul(zk.re.get(), zk.re.get(), radius.get(), MPFR_RNDN);
    mpfr_mul(zk.im.get(), zk.im.get(), radius.get(), MPFR_RNDN);
    z.push_back(std::move(zk));
  }
  return z;
}

CBox point_box(const Cplx& z) { return {Interval::point(z.re), Interval::point(z.im)}; }

CBox eval_box(const IntPoly& g, const CBox& z, mpfr_prec_t p) {
  const auto& c = g.coefficients();
  CBox acc = CBox::from_mpz(c.back(), p);
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) acc = acc * z + CBox::from_mpz(c[k], p);
  return acc;
}

// Isolating discs D(z_i, d |W_i|) with W_i = g(z_i) / prod_{j != i} (z_i - z_j).
// g is the characteristic polynomial of diag(z) - 1 W^T, so by Gerschgorin
// (columns) every root lies in some disc and each connected union of m discs
// holds m roots; pairwise disjoint discs therefore isolate one root each.
std::optional<std::vector<RootBox>> certify(const IntPoly& g, const std::vector<Cplx>& z, mpfr_prec_t p,
                                            int target_bits) {
  const int d = g.degree();
  std::vector<CBox> zb;
  for (const auto& zi : z) zb.push_back(point_box(zi));
  std::vector<BigFloat> radii;
  for (int i = 0; i < d; ++i) {
    CBox prod = CBox::from_int(1, p);
    for (int j = 0; j < d; ++j) {
      if (j != i) prod = prod * (zb[i] - zb[j]);
    }
    if (prod.contains_zero()) return std::nullopt;
    const CBox w = eval_box(g, zb[i], p) / prod;
    BigFloat r = w.abs_upper();
    mpfr_mul_ui(r.get(), r.get(), static_cast<unsigned long>(d), MPFR_RNDU);
    if (mpfr_cmp_ui_2exp(r.get(), 1, -(target_bits / 2)) > 0) return std::nullopt;
    radii.push_back(std::move(r));
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const BigFloat gap = (zb[i] - zb[j]).abs_lower();
      if (!less_than(add_up(radii[i], radii[j]), gap)) return std::nullopt;
    }
  }
  std::vector<RootBox> boxes;
  for (int i = 0; i < d; ++i) boxes.push_back(RootBox{z[i].re, z[i].im, radii[i]});
  return boxes;
}

void sort_boxes(std::vector<RootBox>& boxes, int precision_bits) {
  const std::size_t d = boxes.size();
  std::vector<std::size_t> by_re(d);
  std::iota(by_re.begin(), by_re.end(), 0);
  std::sort(by_re.begin(), by_re.end(),
            [&](std::size_t a, std::size_t b) { return mpfr_less_p(boxes[a].re.get(), boxes[b].re.get()); });
  // Cluster real parts that are equal up to the certified uncertainty.
  std::vector<std::size_t> cluster(d, 0);
  BigFloat tol(64), diff(64);
  for (std::size_t k = 1; k < d; ++k) {
    const auto& a = boxes[by_re[k - 1]];
    const auto& b = boxes[by_re[k]];
    tol = add_up(a.radius, b.radius);
    BigFloat slack(64);
    mpfr_set_ui_2exp(slack.get(), 1, -(precision_bits / 2), MPFR_RNDU);
    tol = add_up(tol, slack);
    diff = BigFloat(std::max(a.re.precision(), b.re.precision()));
    mpfr_sub(diff.get(), b.re.get(), a.re.get(), MPFR_RNDN);
    cluster[by_re[k]] = cluster[by_re[k - 1]] + (less_than(tol, diff) ? 1 : 0);
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cluster[a] != cluster[b]) return cluster[a] < cluster[b];
    return mpfr_less_p(boxes[a].im.get(), boxes[b].im.get()) != 0;
  });
  std::vector<RootBox> sorted;
  for (std::size_t i : order) sorted.push_back(boxes[i]);
  boxes = std::move(sorted);
}

mpfr_prec_t working_precision(int precision_bits) { return static_cast<mpfr_prec_t>(precision_bits) + 32; }

}  // namespace

CBox RootBox::box() const {
  const mpfr_prec_t p = std::max(re.precision(), im.precision());
  return {Interval::around(re, radius, p), Interval::around(im, radius, p)};
}

std::vector<CBox> CertifiedBoxList::cboxes() const {
  std::vector<CBox> out;
  out.reserve(boxes_.size());
  for (const auto& b : boxes_) out.push_back(b.box());
  return out;
}

std::vector<std::complex<double>> CertifiedBoxList::approximations() const {
  std::vector<std::complex<double>> out;
  for (const auto& b : boxes_) out.push_back(b.approx());
  return out;
}

CertifiedBoxList certified_complex_roots(const IntPoly& g, int precision_bits, int precision_cap) {
  if (precision_bits < 64) throw Error(ErrorKind::InvalidArgument, "precision_bits must be >= 64");
  const int d = g.degree();
  mpfr_prec_t p = 128;
  std::vector<Cplx> z = initial_points(g, p);
  aberth(g, z, p, 400 + 40 * d);
  mpfr_prec_t target = working_precision(precision_bits);
  for (;;) {
    while (p < target) {
      p = std::min<mpfr_prec_t>(2 * p, target);
      aberth(g, z, p, 50);
    }
    if (auto boxes = certify(g, z, p, precision_bits)) {
      sort_boxes(*boxes, precision_bits);
      return CertifiedBoxList(g, precision_bits, std::move(*boxes));
    }
    // Either the iteration has not converged or the roots are too close for
    // this precision; restart the polish at double the precision.
    if (2 * target > precision_cap) {
      throw Error(ErrorKind::PrecisionExhausted, "root isolation failed below " + std::to_string(precision_cap) + " bits");
    }
    target *= 2;
    aberth(g, z, p, 400 + 40 * d);
  }
}

CertifiedBoxList CertifiedBoxList::refined(int precision_bits, int precision_cap) const {
  if (precision_bits <= precision_bits_) return *this;
  const int d = degree();
  mpfr_prec_t p = working_precision(precision_bits);
  std::vector<Cplx> z;
  for (const auto& b : boxes_) {
    Cplx zi(p);
    mpfr_set(zi.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_set(zi.im.get(), b.im.get(), MPFR_RNDN);
    z.push_back(std::move(zi));
  }
  for (;;) {
    aberth(poly_, z, p, 60);
    if (auto boxes = certify(poly_, z, p, precision_bits)) {
      // Keep the original order: new disc i must meet old disc i.
      std::vector<RootBox> ordered(d);
      std::vector<bool> used(d, false);
      for (auto& nb : *boxes) {
        const CBox c = CBox(Interval::point(nb.re), Interval::point(nb.im));
        int match = -1;
        for (int i = 0; i < d; ++i) {
          const BigFloat dist = (c - CBox(Interval::point(boxes_[i].re), Interval::point(boxes_[i].im))).abs_lower();
          if (!less_than(add_up(boxes_[i].radius, nb.radius), dist)) {
            match = i;
            break;
          }
        }
        if (match < 0 || used[match]) {
          throw Error(ErrorKind::PrecisionExhausted, "refinement lost track of a root");
        }
        used[match] = true;
        ordered[match] = std::move(nb);
      }
      return CertifiedBoxList(poly_, precision_bits, std::move(ordered));
    }
    if (2 * p > precision_cap) {
      throw Error(ErrorKind::PrecisionExhausted, "root refinement failed below " + std::to_string(precision_cap) + " bits");
    }
    p *= 2;
  }
}

}  // namespace ultrashort
