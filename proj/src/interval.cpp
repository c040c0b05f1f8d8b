#include "ultrashort/interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ultrashort {
namespace {

mpfr_prec_t joint_prec(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

BigFloat min_down(const std::vector<BigFloat>& xs) {
  BigFloat out = xs.front();
  for (const auto& x : xs) {
    if (mpfr_less_p(x.get(), out.get())) out = x;
  }
  return out;
}

BigFloat max_up(const std::vector<BigFloat>& xs) {
  BigFloat out = xs.front();
  for (const auto& x : xs) {
    if (mpfr_greater_p(x.get(), out.get())) out = x;
  }
  return out;
}

Interval square(const Interval& a) {
  const mpfr_prec_t p = a.precision();
  BigFloat lo(p), hi(p);
  BigFloat mig = a.mig(), mag = a.mag();
  mpfr_sqr(lo.get(), mig.get(), MPFR_RNDD);
  mpfr_sqr(hi.get(), mag.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

}  // namespace

std::string BigFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return buf.data();
}

Interval Interval::point(const BigFloat& x) { return {x, x}; }

Interval Interval::from_mpz(const mpz_class& z, mpfr_prec_t prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_set_z(lo.get(), z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), z.get_mpz_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::from_int(long z, mpfr_prec_t prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_set_si(lo.get(), z, MPFR_RNDD);
  mpfr_set_si(hi.get(), z, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::around(const BigFloat& center, const BigFloat& radius, mpfr_prec_t prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_sub(lo.get(), center.get(), radius.get(), MPFR_RNDD);
  mpfr_add(hi.get(), center.get(), radius.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }

BigFloat Interval::mag() const {
  BigFloat a(precision()), b(precision());
  mpfr_abs(a.get(), lo_.get(), MPFR_RNDU);
  mpfr_abs(b.get(), hi_.get(), MPFR_RNDU);
  return max_of(a, b);
}

BigFloat Interval::mig() const {
  BigFloat out(precision());
  if (contains_zero()) return out;
  if (mpfr_sgn(lo_.get()) > 0) {
    mpfr_set(out.get(), lo_.get(), MPFR_RNDD);
  } else {
    mpfr_neg(out.get(), hi_.get(), MPFR_RNDD);
  }
  return out;
}

BigFloat Interval::width() const {
  BigFloat out(precision());
  mpfr_sub(out.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return out;
}

double Interval::midpoint_double() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }

Interval operator+(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = joint_prec(a, b);
  BigFloat lo(p), hi(p);
  mpfr_add(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator-(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = joint_prec(a, b);
  BigFloat lo(p), hi(p);
  mpfr_sub(lo.get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator-(const Interval& a) {
  BigFloat lo(a.precision()), hi(a.precision());
  mpfr_neg(lo.get(), a.hi().get(), MPFR_RNDD);
  mpfr_neg(hi.get(), a.lo().get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t p = joint_prec(a, b);
  std::vector<BigFloat> downs, ups;
  downs.reserve(4);
  ups.reserve(4);
  for (const BigFloat* x : {&a.lo(), &a.hi()}) {
    for (const BigFloat* y : {&b.lo(), &b.hi()}) {
      BigFloat dn(p), up(p);
      mpfr_mul(dn.get(), x->get(), y->get(), MPFR_RNDD);
      mpfr_mul(up.get(), x->get(), y->get(), MPFR_RNDU);
      downs.push_back(std::move(dn));
      ups.push_back(std::move(up));
    }
  }
  return {min_down(downs), max_up(ups)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  const mpfr_prec_t p = joint_prec(a, b);
  BigFloat lo(p), hi(p);
  mpfr_ui_div(lo.get(), 1, b.hi().get(), MPFR_RNDD);
  mpfr_ui_div(hi.get(), 1, b.lo().get(), MPFR_RNDU);
  return a * Interval(std::move(lo), std::move(hi));
}

BigFloat CBox::abs_upper() const {
  BigFloat mr = re_.mag(), mi = im_.mag();
  BigFloat out(std::max(re_.precision(), im_.precision()));
  mpfr_sqr(mr.get(), mr.get(), MPFR_RNDU);
  mpfr_sqr(mi.get(), mi.get(), MPFR_RNDU);
  mpfr_add(out.get(), mr.get(), mi.get(), MPFR_RNDU);
  mpfr_sqrt(out.get(), out.get(), MPFR_RNDU);
  return out;
}

BigFloat CBox::abs_lower() const {
  BigFloat mr = re_.mig(), mi = im_.mig();
  BigFloat out(std::max(re_.precision(), im_.precision()));
  mpfr_sqr(mr.get(), mr.get(), MPFR_RNDD);
  mpfr_sqr(mi.get(), mi.get(), MPFR_RNDD);
  mpfr_add(out.get(), mr.get(), mi.get(), MPFR_RNDD);
  mpfr_sqrt(out.get(), out.get(), MPFR_RNDD);
  return out;
}

BigFloat CBox::diameter() const {
  BigFloat wr = re_.width(), wi = im_.width();
  BigFloat out(std::max(re_.precision(), im_.precision()));
  mpfr_sqr(wr.get(), wr.get(), MPFR_RNDU);
  mpfr_sqr(wi.get(), wi.get(), MPFR_RNDU);
  mpfr_add(out.get(), wr.get(), wi.get(), MPFR_RNDU);
  mpfr_sqrt(out.get(), out.get(), MPFR_RNDU);
  return out;
}

CBox operator+(const CBox& a, const CBox& b) { return {a.re() + b.re(), a.im() + b.im()}; }
CBox operator-(const CBox& a, const CBox& b) { return {a.re() - b.re(), a.im() - b.im()}; }

CBox operator*(const CBox& a, const CBox& b) {
  return {a.re() * b.re() - a.im() * b.im(), a.re() * b.im() + a.im() * b.re()};
}

CBox operator*(const CBox& a, long k) {
  const Interval kk = Interval::from_int(k, std::max(a.re().precision(), mpfr_prec_t{64}));
  return {a.re() * kk, a.im() * kk};
}

CBox CBox::inverse() const {
  Interval norm = square(re_) + square(im_);
  return {re_ / norm, -im_ / norm};
}

CBox operator/(const CBox& a, const CBox& b) { return a * b.inverse(); }

CBox CBox::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  const mpfr_prec_t p = std::max(re_.precision(), im_.precision());
  CBox result = CBox::from_int(1, p);
  CBox base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

BigFloat add_up(const BigFloat& a, const BigFloat& b) {
  BigFloat out(std::max(a.precision(), b.precision()));
  mpfr_add(out.get(), a.get(), b.get(), MPFR_RNDU);
  return out;
}

BigFloat mul_up(const BigFloat& a, const BigFloat& b) {
  BigFloat out(std::max(a.precision(), b.precision()));
  mpfr_mul(out.get(), a.get(), b.get(), MPFR_RNDU);
  return out;
}

BigFloat max_of(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.get(), b.get()) ? a : b; }

bool less_than(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.get(), b.get()) != 0; }

}  // namespace ultrashort
