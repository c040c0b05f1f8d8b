#pragma once

// Outward-rounded interval arithmetic on MPFR. Every Interval [lo, hi]
// contains the exact real value it represents; CBox is a rectangle in C.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace ultrashort {

/// RAII owner of an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(mpfr_prec_t prec, double x) : BigFloat(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
  BigFloat(const BigFloat& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  BigFloat& operator=(const BigFloat& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Changes precision, rounding the current value to nearest.
  void set_precision(mpfr_prec_t prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }
  std::string to_string(int digits = 20) const;

 private:
  mpfr_t v_;
};

class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 64) : lo_(prec), hi_(prec) {}
  Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

  static Interval point(const BigFloat& x);
  static Interval from_mpz(const mpz_class& z, mpfr_prec_t prec);
  static Interval from_int(long z, mpfr_prec_t prec);
  /// [c - r, c + r] rounded outward.
  static Interval around(const BigFloat& center, const BigFloat& radius, mpfr_prec_t prec);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  bool contains_zero() const;
  /// Upper bound of |x| over the interval.
  BigFloat mag() const;
  /// Lower bound of |x| over the interval (0 if it straddles 0).
  BigFloat mig() const;
  /// Upper bound of hi - lo.
  BigFloat width() const;
  double midpoint_double() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);
  /// Requires 0 not in b.
  friend Interval operator/(const Interval& a, const Interval& b);

 private:
  BigFloat lo_, hi_;
};

class CBox {
 public:
  explicit CBox(mpfr_prec_t prec = 64) : re_(prec), im_(prec) {}
  CBox(Interval re, Interval im) : re_(std::move(re)), im_(std::move(im)) {}

  static CBox from_int(long z, mpfr_prec_t prec) { return {Interval::from_int(z, prec), Interval::from_int(0, prec)}; }
  static CBox from_mpz(const mpz_class& z, mpfr_prec_t prec) {
    return {Interval::from_mpz(z, prec), Interval::from_int(0, prec)};
  }

  const Interval& re() const { return re_; }
  const Interval& im() const { return im_; }

  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  BigFloat abs_upper() const;
  BigFloat abs_lower() const;
  /// Upper bound on the diagonal length of the rectangle.
  BigFloat diameter() const;

  friend CBox operator+(const CBox& a, const CBox& b);
  friend CBox operator-(const CBox& a, const CBox& b);
  friend CBox operator*(const CBox& a, const CBox& b);
  friend CBox operator*(const CBox& a, long k);
  friend CBox operator/(const CBox& a, const CBox& b);

  CBox inverse() const;
  CBox pow(long e) const;

 private:
  Interval re_, im_;
};

// Directed-rounding helpers on plain BigFloats, used for error bookkeeping.
BigFloat add_up(const BigFloat& a, const BigFloat& b);
BigFloat mul_up(const BigFloat& a, const BigFloat& b);
BigFloat max_of(const BigFloat& a, const BigFloat& b);
bool less_than(const BigFloat& a, const BigFloat& b);

}  // namespace ultrashort
