#pragma once

#include <random>

#include "repvar/mat2.hpp"

namespace repvar::test {

using GQ = GaussianRational;

inline GQ gq(long re_num, long re_den = 1, long im_num = 0, long im_den = 1) {
  return GQ::from_ints(re_num, re_den, im_num, im_den);
}

inline GQ rand_gq(std::mt19937_64& rng, long lo = -5, long hi = 5) {
  std::uniform_int_distribution<long> num(lo, hi);
  std::uniform_int_distribution<long> den(1, 3);
  return GQ(make_rational(num(rng), den(rng)),
            make_rational(num(rng), den(rng)));
}

inline GQ rand_gq_nonzero(std::mt19937_64& rng) {
  for (;;) {
    GQ v = rand_gq(rng);
    if (!v.is_zero()) return v;
  }
}

inline Mat2q rand_sl2q(std::mt19937_64& rng) {
  for (;;) {
    GQ p = rand_gq(rng);
    if (p.is_zero()) continue;
    GQ q = rand_gq(rng), r = rand_gq(rng);
    return Mat2q(p, q, r, (GQ(1) + q * r) / p, true);
  }
}

inline Complex rand_c(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Complex(u(rng), u(rng));
}

inline Mat2c rand_sl2c(std::mt19937_64& rng) {
  for (;;) {
    Complex a = rand_c(rng);
    if (std::abs(a) < 0.3) continue;
    Complex b = rand_c(rng), c = rand_c(rng);
    return Mat2c(a, b, c, (Complex(1) + b * c) / a, true);
  }
}

// Brute-force oracle: multiply out A B A^-1 B^-1 entry by entry, without
// Mat2's operator chain (independent route for mat_commutator).
template <class S>
Mat2<S> commutator_oracle(const Mat2<S>& A, const Mat2<S>& B) {
  auto mul = [](const Mat2<S>& X, const Mat2<S>& Y) {
    S e00 = X.at(0, 0) * Y.at(0, 0) + X.at(0, 1) * Y.at(1, 0);
    S e01 = X.at(0, 0) * Y.at(0, 1) + X.at(0, 1) * Y.at(1, 1);
    S e10 = X.at(1, 0) * Y.at(0, 0) + X.at(1, 1) * Y.at(1, 0);
    S e11 = X.at(1, 0) * Y.at(0, 1) + X.at(1, 1) * Y.at(1, 1);
    return Mat2<S>(e00, e01, e10, e11, false);
  };
  Mat2<S> Ai(A.at(1, 1), -A.at(0, 1), -A.at(1, 0), A.at(0, 0), false);
  Mat2<S> Bi(B.at(1, 1), -B.at(0, 1), -B.at(1, 0), B.at(0, 0), false);
  return mul(mul(A, B), mul(Ai, Bi));
}

}  // namespace repvar::test
