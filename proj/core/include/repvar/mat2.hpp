#pragma once

#include <array>

#include "repvar/scalar.hpp"

namespace repvar {

inline constexpr double kDetTolerance = 1e-9;

// 2x2 complex matrix over either scalar backend, with an sl2 flag claiming
// det = 1.  Values are immutable after construction; all operations are pure.
template <class S>
class Mat2 {
 public:
  Mat2() : e_{S(0), S(0), S(0), S(0)}, sl2_(false) {}
  Mat2(S a, S b, S c, S d, bool sl2_flag = false)
      : e_{std::move(a), std::move(b), std::move(c), std::move(d)},
        sl2_(sl2_flag) {}

  static Mat2 identity() { return Mat2(S(1), S(0), S(0), S(1), true); }
  static Mat2 zero() { return Mat2(); }

  // Checked constructor for determinant-1 matrices.  Exact backend: det must
  // equal 1 exactly; float backend: |det - 1| <= tol.
  static Mat2 sl2(S a, S b, S c, S d, double tol = kDetTolerance) {
    Mat2 m(std::move(a), std::move(b), std::move(c), std::move(d), true);
    if (!close(m.det(), S(1), tol))
      throw DomainError("matrix flagged sl2 but det != 1");
    return m;
  }

  const S& a() const { return e_[0]; }
  const S& b() const { return e_[1]; }
  const S& c() const { return e_[2]; }
  const S& d() const { return e_[3]; }
  const S& at(int i, int j) const { return e_[2 * i + j]; }

  bool sl2_flag() const { return sl2_; }

  S det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
  S trace() const { return e_[0] + e_[3]; }

  Mat2 transpose() const { return Mat2(e_[0], e_[2], e_[1], e_[3], sl2_); }

  Mat2 inverse() const {
    if (sl2_) return Mat2(e_[3], -e_[1], -e_[2], e_[0], true);
    S dt = det();
    if (is_zero(dt)) throw DomainError("inverse of singular matrix");
    return Mat2(e_[3] / dt, -e_[1] / dt, -e_[2] / dt, e_[0] / dt, false);
  }

  Mat2 operator*(const Mat2& o) const {
    return Mat2(e_[0] * o.e_[0] + e_[1] * o.e_[2],
                e_[0] * o.e_[1] + e_[1] * o.e_[3],
                e_[2] * o.e_[0] + e_[3] * o.e_[2],
                e_[2] * o.e_[1] + e_[3] * o.e_[3], sl2_ && o.sl2_);
  }
  Mat2 operator+(const Mat2& o) const {
    return Mat2(e_[0] + o.e_[0], e_[1] + o.e_[1], e_[2] + o.e_[2],
                e_[3] + o.e_[3], false);
  }
  Mat2 operator-(const Mat2& o) const {
    return Mat2(e_[0] - o.e_[0], e_[1] - o.e_[1], e_[2] - o.e_[2],
                e_[3] - o.e_[3], false);
  }
  Mat2 operator-() const {
    return Mat2(-e_[0], -e_[1], -e_[2], -e_[3], sl2_);
  }
  friend Mat2 operator*(const S& k, const Mat2& m) {
    return Mat2(k * m.e_[0], k * m.e_[1], k * m.e_[2], k * m.e_[3], false);
  }

  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.e_ == y.e_;
  }
  friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

  // G * this * G^-1.
  Mat2 conjugated_by(const Mat2& g) const {
    return g * (*this) * g.inverse();
  }

  bool is_identity(double tol = 0) const {
    return entrywise_close(identity(), tol);
  }
  bool is_minus_identity(double tol = 0) const {
    return entrywise_close(-identity(), tol);
  }
  bool is_central(double tol = 0) const {
    return is_identity(tol) || is_minus_identity(tol);
  }

  bool entrywise_close(const Mat2& o, double tol) const {
    for (int k = 0; k < 4; ++k)
      if (!close(e_[k], o.e_[k], tol)) return false;
    return true;
  }

  // max-norm of the entries.
  RealOf<S> max_norm() const {
    if constexpr (is_exact_v<S>) {
      mpq_class m = 0;
      for (const auto& x : e_) {
        mpq_class re = abs(x.re()), im = abs(x.im());
        if (re > m) m = re;
        if (im > m) m = im;
      }
      return m;
    } else {
      double m = 0;
      for (const auto& x : e_) m = std::max(m, std::abs(x));
      return m;
    }
  }

  // Returns a copy carrying the sl2 claim (validated).
  Mat2 as_sl2(double tol = kDetTolerance) const {
    return sl2(e_[0], e_[1], e_[2], e_[3], tol);
  }

 private:
  std::array<S, 4> e_;
  bool sl2_;
};

// max-norm distance between two matrices.
template <class S>
RealOf<S> max_norm_distance(const Mat2<S>& x, const Mat2<S>& y) {
  return (x - y).max_norm();
}

// [A, B] = A B A^-1 B^-1.
template <class S>
Mat2<S> mat_commutator(const Mat2<S>& A, const Mat2<S>& B) {
  Mat2<S> c = A * B * A.inverse() * B.inverse();
  return Mat2<S>(c.a(), c.b(), c.c(), c.d(), A.sl2_flag() && B.sl2_flag());
}

using Mat2q = Mat2<GaussianRational>;
using Mat2c = Mat2<Complex>;

}  // namespace repvar
