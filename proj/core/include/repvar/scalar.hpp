#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

#include "repvar/gaussian_rational.hpp"

namespace repvar {

using Complex = std::complex<double>;

// The two scalar backends.  Every algebraic module is templated over S and
// never mixes backends inside one expression; the choice is made once, at the
// CLI / JSON boundary.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool is_exact = true;
  using Real = mpq_class;
  static GaussianRational from_int(long n) { return GaussianRational(n); }
  static Real real_zero() { return mpq_class(0); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool is_exact = false;
  using Real = double;
  static Complex from_int(long n) { return Complex(static_cast<double>(n), 0); }
  static Real real_zero() { return 0.0; }
};

template <class S>
inline constexpr bool is_exact_v = ScalarTraits<S>::is_exact;

template <class S>
using RealOf = typename ScalarTraits<S>::Real;

template <class S>
S scalar_from_int(long n) {
  return ScalarTraits<S>::from_int(n);
}

template <class S>
S imaginary_unit();
template <>
inline GaussianRational imaginary_unit<GaussianRational>() {
  return GaussianRational::i();
}
template <>
inline Complex imaginary_unit<Complex>() {
  return Complex(0, 1);
}

inline mpq_class norm_sq(const GaussianRational& z) { return z.norm(); }
inline double norm_sq(const Complex& z) { return std::norm(z); }

inline GaussianRational conj_of(const GaussianRational& z) { return z.conj(); }
inline Complex conj_of(const Complex& z) { return std::conj(z); }

inline bool is_zero(const GaussianRational& z) { return z.is_zero(); }
inline bool is_zero(const Complex& z) { return z == Complex(0, 0); }

// Backend-aware closeness: exact equality on the exact backend, |a-b| <= tol
// on the floating backend.
template <class S>
bool close(const S& a, const S& b, double tol) {
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return a == b;
  } else {
    return std::abs(a - b) <= tol;
  }
}

// |a - b| as the backend's real type (exact: squared modulus is rational, so
// we report the max of |re|,|im| instead; float: modulus).
inline double abs_diff(const Complex& a, const Complex& b) {
  return std::abs(a - b);
}
inline mpq_class abs_diff(const GaussianRational& a, const GaussianRational& b) {
  GaussianRational d = a - b;
  mpq_class re = abs(d.re()), im = abs(d.im());
  return re > im ? re : im;
}

// True when |z| <= bound, decided exactly on the exact backend via |z|^2.
inline bool modulus_at_most(const GaussianRational& z, double bound) {
  mpq_class b = parse_rational(std::to_string(bound));
  return z.norm() <= b * b;
}
inline bool modulus_at_most(const Complex& z, double bound) {
  return std::abs(z) <= bound;
}

template <class S>
double to_double_real(const RealOf<S>& r) {
  if constexpr (is_exact_v<S>) {
    return r.get_d();
  } else {
    return r;
  }
}

}  // namespace repvar
