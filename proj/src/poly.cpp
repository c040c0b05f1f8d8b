#include "ultrashort/poly.hpp"

#include <cctype>
#include <sstream>

#include "ultrashort/error.hpp"

namespace ultrashort {
namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

bool looks_like_coefficient_list(std::string_view s) {
  for (char c : s) {
    if (c == 'x' || c == 'X') return false;
  }
  return true;
}

std::vector<mpz_class> parse_coefficient_list(const std::string& s) {
  std::vector<mpz_class> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw Error(ErrorKind::ParseError, "empty coefficient in '" + s + "'");
    if (item.front() == '+') item.erase(0, 1);
    mpz_class v;
    if (v.set_str(item, 10) != 0) throw Error(ErrorKind::ParseError, "bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

// Renders sum c_k X^k, highest exponent first.
template <typename Coeff>
std::string render_terms(const std::map<int, Coeff>& terms) {
  std::string out;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [exp, c] = *it;
    if (c == 0) continue;
    Coeff mag = c < 0 ? Coeff(-c) : c;
    std::ostringstream piece;
    if (c < 0) {
      piece << "-";
    } else if (!out.empty()) {
      piece << "+";
    }
    if (exp == 0) {
      piece << mag;
    } else {
      if (mag != 1) piece << mag;
      piece << "X";
      if (exp != 1) piece << "^" << exp;
    }
    out += piece.str();
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::map<int, mpz_class> parse_monomial_sum(std::string_view raw) {
  const std::string s = strip_spaces(raw);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty polynomial");
  std::map<int, mpz_class> terms;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, why + " at position " + std::to_string(i) + " in '" + s + "'");
  };
  auto read_digits = [&](std::string& digits) {
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!terms.empty() || i != 0) {
      fail("expected '+' or '-'");
    }
    std::string digits;
    read_digits(digits);
    mpz_class coeff = digits.empty() ? mpz_class(1) : mpz_class(digits);
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) fail("dangling '*'");
      ++i;
    }
    int exponent = 0;
    if (i < s.size() && (s[i] == 'X' || s[i] == 'x')) {
      ++i;
      exponent = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        bool paren = i < s.size() && s[i] == '(';
        if (paren) ++i;
        int esign = 1;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
          esign = s[i] == '-' ? -1 : 1;
          ++i;
        }
        std::string edigits;
        read_digits(edigits);
        if (edigits.empty() || edigits.size() > 6) fail("bad exponent");
        exponent = esign * std::stoi(edigits);
        if (paren) {
          if (i >= s.size() || s[i] != ')') fail("expected ')'");
          ++i;
        }
      }
    } else if (digits.empty()) {
      fail("expected a coefficient or X");
    }
    terms[exponent] += sign * coeff;
  }
  for (auto it = terms.begin(); it != terms.end();) {
    it = it->second == 0 ? terms.erase(it) : std::next(it);
  }
  return terms;
}

namespace {

// Determinant by fraction-free Bareiss elimination.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r) {
        if (m[r][k] != 0) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < n; ++c) {
        m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) / prev;
      }
      m[r][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

int trimmed_degree(std::span<const mpz_class> f) {
  int d = static_cast<int>(f.size()) - 1;
  while (d >= 0 && f[d] == 0) --d;
  return d;
}

}  // namespace

mpz_class resultant(std::span<const mpz_class> f, std::span<const mpz_class> h) {
  const int m = trimmed_degree(f);
  const int n = trimmed_degree(h);
  if (m < 0 || n < 0) return 0;
  // Sylvester matrix, coefficients highest degree first.
  const int size = m + n;
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size, 0));
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k <= m; ++k) s[r][r + k] = f[m - k];
  }
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k <= n; ++k) s[n + r][r + k] = h[n - k];
  }
  return bareiss_determinant(std::move(s));
}

mpz_class discriminant(std::span<const mpz_class> f) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 1) throw Error(ErrorKind::InvalidPolynomial, "discriminant needs degree >= 1");
  if (d == 1) return 1;
  std::vector<mpz_class> df(d);
  for (int k = 1; k <= d; ++k) df[k - 1] = f[k] * k;
  mpz_class res = resultant(f, df);
  // (-1)^{d(d-1)/2}
  if (((d * (d - 1)) / 2) % 2 == 1) res = -res;
  return res;
}

IntPoly::IntPoly(std::vector<mpz_class> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.size() < 2) throw Error(ErrorKind::InvalidPolynomial, "degree must be at least 1");
  if (coeffs_.back() != 1) throw Error(ErrorKind::InvalidPolynomial, "polynomial must be monic");
  disc_ = ultrashort::discriminant(coeffs_);
  if (disc_ == 0) throw Error(ErrorKind::InvalidPolynomial, "polynomial is not separable (zero discriminant)");
}

IntPoly IntPoly::parse(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (looks_like_coefficient_list(s) && s.find(',') != std::string::npos) {
    return IntPoly(parse_coefficient_list(s));
  }
  auto terms = parse_monomial_sum(s);
  if (terms.empty()) throw Error(ErrorKind::InvalidPolynomial, "zero polynomial");
  if (terms.begin()->first < 0) throw Error(ErrorKind::ParseError, "negative exponent in a polynomial");
  std::vector<mpz_class> coeffs(static_cast<std::size_t>(terms.rbegin()->first) + 1, 0);
  for (const auto& [e, c] : terms) coeffs[static_cast<std::size_t>(e)] = c;
  return IntPoly(std::move(coeffs));
}

std::vector<u64> IntPoly::reduce_mod(u64 m) const {
  std::vector<u64> out;
  out.reserve(coeffs_.size());
  mpz_class mm;
  mpz_import(mm.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &m);
  for (const auto& c : coeffs_) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), mm.get_mpz_t());
    u64 v = 0;
    mpz_export(&v, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
    out.push_back(v);
  }
  return out;
}

u64 IntPoly::eval_mod(u64 x, u64 m) const {
  const auto c = reduce_mod(m);
  u64 acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = add_mod(mul_mod(acc, x, m), *it, m);
  return acc;
}

u64 IntPoly::derivative_eval_mod(u64 x, u64 m) const {
  const auto c = reduce_mod(m);
  u64 acc = 0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    acc = add_mod(mul_mod(acc, x, m), mul_mod(c[k], k % m, m), m);
  }
  return acc;
}

std::string IntPoly::to_string() const {
  std::map<int, mpz_class> terms;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) terms[static_cast<int>(k)] = coeffs_[k];
  return render_terms(terms);
}

std::string IntPoly::coefficient_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) out += ",";
    out += coeffs_[k].get_str();
  }
  return out;
}

LaurentPoly::LaurentPoly(std::map<int, i64> terms) : terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
}

LaurentPoly LaurentPoly::parse(std::string_view text) {
  std::map<int, i64> terms;
  for (const auto& [e, c] : parse_monomial_sum(text)) {
    if (!c.fits_slong_p()) throw Error(ErrorKind::ParseError, "Laurent coefficient out of range");
    terms[e] = c.get_si();
  }
  return LaurentPoly(std::move(terms));
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

u64 LaurentPoly::eval_mod(u64 x, u64 x_inv, u64 m) const {
  u64 acc = 0;
  for (const auto& [e, c] : terms_) {
    u64 base = e < 0 ? x_inv : x;
    u64 p = pow_mod(base, static_cast<u64>(e < 0 ? -e : e), m);
    acc = add_mod(acc, mul_mod(reduce_signed(c, m), p, m), m);
  }
  return acc;
}

std::string LaurentPoly::to_string() const { return render_terms(terms_); }

}  // namespace ultrashort
