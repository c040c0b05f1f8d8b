#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ultrashort/modular.hpp"

namespace ultrashort {

/// Monic separable polynomial with integer coefficients, lowest degree first.
class IntPoly {
 public:
  /// Throws InvalidPolynomial unless the input is monic, of degree >= 1 and
  /// has non-zero discriminant. Trailing zero coefficients are trimmed.
  explicit IntPoly(std::vector<mpz_class> coefficients);

  /// Accepts "c0,c1,...,cd" or the human form "X^3+X+3".
  static IntPoly parse(std::string_view text);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  const mpz_class& discriminant() const { return disc_; }
  const mpz_class& constant_term() const { return coeffs_.front(); }

  /// Coefficients reduced into [0, m).
  std::vector<u64> reduce_mod(u64 m) const;
  u64 eval_mod(u64 x, u64 m) const;
  u64 derivative_eval_mod(u64 x, u64 m) const;

  std::string to_string() const;
  std::string coefficient_string() const;

  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<mpz_class> coeffs_;
  mpz_class disc_;
};

/// Res(f, h) from the Sylvester determinant; coefficient lists lowest degree first.
mpz_class resultant(std::span<const mpz_class> f, std::span<const mpz_class> h);

/// disc = (-1)^{d(d-1)/2} Res(f, f') for a monic coefficient list.
mpz_class discriminant(std::span<const mpz_class> monic_coefficients);
inline const mpz_class& discriminant(const IntPoly& g) { return g.discriminant(); }

/// Integer Laurent polynomial sum_k c_k X^k, used as the "value" map v.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<int, i64> terms);

  static LaurentPoly parse(std::string_view text);
  static LaurentPoly monomial(int exponent) { return LaurentPoly(std::map<int, i64>{{exponent, 1}}); }

  const std::map<int, i64>& terms() const { return terms_; }
  bool is_constant() const;
  bool has_negative_exponent() const { return !terms_.empty() && terms_.begin()->first < 0; }
  int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  /// v(x) mod m; x_inv must be the inverse of x whenever negative exponents occur.
  u64 eval_mod(u64 x, u64 x_inv, u64 m) const;

  std::string to_string() const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

 private:
  std::map<int, i64> terms_;
};

/// Parses a sum of integer monomials in one variable X into exponent -> coefficient.
std::map<int, mpz_class> parse_monomial_sum(std::string_view text);

}  // namespace ultrashort
