#include "repvar/gaussian_rational.hpp"

#include <algorithm>
#include <cctype>

namespace repvar {

mpq_class parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw DomainError("empty rational literal");

  auto dot = t.find('.');
  if (dot != std::string::npos) {
    // Decimal expansion: digits after the dot become a power-of-ten
    // denominator.
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac_len = t.size() - dot - 1;
    mpz_class num;
    if (num.set_str(digits, 10) != 0)
      throw DomainError("bad rational literal: " + s);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  mpq_class q;
  if (q.set_str(t, 10) != 0) throw DomainError("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return mpq_class(0);
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn, rd);
}

std::optional<GaussianRational> GaussianRational::sqrt() const {
  return gaussian_sqrt(*this);
}

std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z) {
  // Solve (u + vi)^2 = x + yi over Q: u^2 - v^2 = x, 2uv = y.
  const mpq_class& x = z.re();
  const mpq_class& y = z.im();
  if (y == 0) {
    if (x >= 0) {
      auto r = rational_sqrt(x);
      if (!r) return std::nullopt;
      return GaussianRational(*r, mpq_class(0));
    }
    auto r = rational_sqrt(-x);
    if (!r) return std::nullopt;
    return GaussianRational(mpq_class(0), *r);
  }
  // |z| must be rational: x^2 + y^2 a perfect square.
  auto n = rational_sqrt(x * x + y * y);
  if (!n) return std::nullopt;
  // u^2 = (x + |z|)/2 must be a perfect square; then v = y/(2u) follows and
  // v^2 = (|z| - x)/2 holds automatically.
  auto u = rational_sqrt((x + *n) / 2);
  if (!u || *u == 0) return std::nullopt;
  mpq_class v = y / (2 * *u);
  return GaussianRational(*u, v);
}

std::string GaussianRational::to_string() const {
  std::string s = re_.get_str();
  if (im_ != 0) {
    s += (im_ > 0 ? "+" : "") + im_.get_str() + "i";
  }
  return s;
}

}  // namespace repvar
