#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "repvar/errors.hpp"

namespace repvar {

// Rational p/q from integers, in canonical form.
inline mpq_class make_rational(long num, long den = 1) {
  if (den == 0) throw DomainError("rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p/q", "3.25" (decimal expansions become exact rationals).
mpq_class parse_rational(const std::string& s);
std::string rational_to_string(const mpq_class& q);

// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<mpq_class> rational_sqrt(const mpq_class& q);

// An element of Q(i): complex number with exact rational real and imaginary
// parts.  Equality is decidable; there is no implicit conversion to or from
// the floating backend.
class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(int n) : re_(n), im_(0) {}        // NOLINT(runtime/explicit)
  GaussianRational(long n) : re_(n), im_(0) {}       // NOLINT(runtime/explicit)
  GaussianRational(mpq_class re) : re_(std::move(re)), im_(0) {}
  GaussianRational(mpq_class re, mpq_class im)
      : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {mpq_class(0), mpq_class(1)}; }
  static GaussianRational from_ints(long re_num, long re_den, long im_num = 0,
                                    long im_den = 1) {
    return {make_rational(re_num, re_den), make_rational(im_num, im_den)};
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussianRational conj() const { return {re_, -im_}; }

  // |z|^2, an exact nonnegative rational.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw DomainError("division by zero in Q(i)");
    mpq_class n = o.norm();
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    im_ = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a,
                                    const GaussianRational& b) {
    return a += b;
  }
  friend GaussianRational operator-(GaussianRational a,
                                    const GaussianRational& b) {
    return a -= b;
  }
  friend GaussianRational operator*(GaussianRational a,
                                    const GaussianRational& b) {
    return a *= b;
  }
  friend GaussianRational operator/(GaussianRational a,
                                    const GaussianRational& b) {
    return a /= b;
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

  GaussianRational inverse() const {
    GaussianRational one(1);
    return one / *this;
  }

  // Exact square root in Q(i), when one exists.
  std::optional<GaussianRational> sqrt() const;

  std::string to_string() const;

  // Best-effort double approximation (for diagnostics only).
  double re_double() const { return re_.get_d(); }
  double im_double() const { return im_.get_d(); }

 private:
  mpq_class re_, im_;
};

std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z);

}  // namespace repvar
