#pragma once

#include <optional>
#include <vector>

#include "repvar/mat2.hpp"

namespace repvar {

inline constexpr double kFixpointTolerance = 1e-9;

// A point of the Riemann sphere in homogeneous coordinates [z : w].
template <class S>
struct ProjectivePoint {
  S z, w;

  static ProjectivePoint infinity() { return {S(1), S(0)}; }
  static ProjectivePoint finite(S value) { return {std::move(value), S(1)}; }

  bool is_infinity(double tol = 0) const { return close(w, S(0), tol); }

  // Affine value; only valid when not at infinity.
  S value() const {
    if (is_zero(w)) throw DomainError("value() of the point at infinity");
    return z / w;
  }

  bool same_point_as(const ProjectivePoint& o, double tol = 0) const {
    return close(z * o.w - w * o.z, S(0), tol);
  }
};

// Moebius action of a matrix on a projective point.
template <class S>
ProjectivePoint<S> moebius_apply(const Mat2<S>& m,
                                 const ProjectivePoint<S>& p) {
  return {m.a() * p.z + m.b() * p.w, m.c() * p.z + m.d() * p.w};
}

// Coefficients (q2, q1, q0) of the homogeneous fixed-point form
// q(z,w) = q2 z^2 + q1 z w + q0 w^2 = c z^2 + (d-a) z w - b w^2,
// whose roots in P^1 are the fixed points of the Moebius action.
template <class S>
std::array<S, 3> fixed_point_form(const Mat2<S>& m) {
  return {m.c(), m.d() - m.a(), -m.b()};
}

// trace^2 - 4, the discriminant of the fixed-point form for sl2 matrices.
template <class S>
S sl2_discriminant(const Mat2<S>& m) {
  S t = m.trace();
  return t * t - S(4);
}

// True when m and n have identical fixed-point sets (proportional forms).
template <class S>
bool same_fixed_set(const Mat2<S>& m, const Mat2<S>& n, double tol = 0);

// True when m and n share at least one fixed point (resultant of the two
// fixed-point forms vanishes).
template <class S>
bool share_fixed_point(const Mat2<S>& m, const Mat2<S>& n, double tol = 0);

enum class FixedPointCount { one, two, all };

// Result of the fixed-point computation for an sl2 matrix.  count == all
// only for +-I; parabolic elements have exactly one point, everything else
// exactly two.
template <class S>
struct MoebiusFixedPoints {
  FixedPointCount count;
  std::vector<ProjectivePoint<S>> points;  // empty when count == all
};

template <class S>
MoebiusFixedPoints<S> fixed_points(const Mat2<S>& m,
                                   double tol = kFixpointTolerance);

// The fixed points of m expressible over the scalar backend: on the exact
// backend this omits points whose coordinates need a quadratic extension; on
// the float backend it returns all of them.  +-I yields an empty list.
template <class S>
std::vector<ProjectivePoint<S>> rational_fixed_points(const Mat2<S>& m,
                                                      double tol = 0);

// ---------------------------------------------------------------------------

template <class S>
bool same_fixed_set(const Mat2<S>& m, const Mat2<S>& n, double tol) {
  auto q = fixed_point_form(m);
  auto r = fixed_point_form(n);
  if constexpr (!is_exact_v<S>) {
    // Normalize to unit max-coefficient before comparing cross products.
    double qm = 0, rm = 0;
    for (int k = 0; k < 3; ++k) {
      qm = std::max(qm, std::abs(q[k]));
      rm = std::max(rm, std::abs(r[k]));
    }
    if (qm == 0 || rm == 0) return qm == rm;
    for (auto& v : q) v /= qm;
    for (auto& v : r) v /= rm;
  }
  return close(q[0] * r[1] - q[1] * r[0], S(0), tol) &&
         close(q[0] * r[2] - q[2] * r[0], S(0), tol) &&
         close(q[1] * r[2] - q[2] * r[1], S(0), tol);
}

template <class S>
bool share_fixed_point(const Mat2<S>& m, const Mat2<S>& n, double tol) {
  auto q = fixed_point_form(m);
  auto r = fixed_point_form(n);
  if constexpr (!is_exact_v<S>) {
    double qm = 0, rm = 0;
    for (int k = 0; k < 3; ++k) {
      qm = std::max(qm, std::abs(q[k]));
      rm = std::max(rm, std::abs(r[k]));
    }
    if (qm > 0)
      for (auto& v : q) v /= qm;
    if (rm > 0)
      for (auto& v : r) v /= rm;
  }
  // Res(q, r) for binary quadratics.
  S res = (q[0] * r[2] - q[2] * r[0]) * (q[0] * r[2] - q[2] * r[0]) -
          (q[0] * r[1] - q[1] * r[0]) * (q[1] * r[2] - q[2] * r[1]);
  return close(res, S(0), tol);
}

template <class S>
std::vector<ProjectivePoint<S>> rational_fixed_points(const Mat2<S>& m,
                                                      double tol) {
  std::vector<ProjectivePoint<S>> out;
  if (m.is_central(tol)) return out;
  auto [q2, q1, q0] = fixed_point_form(m);
  if (close(q2, S(0), tol)) {
    // Infinity is fixed; a second finite point exists when q1 != 0.
    out.push_back(ProjectivePoint<S>::infinity());
    if (!close(q1, S(0), tol)) out.push_back({-q0 / q1, S(1)});
    return out;
  }
  S disc = q1 * q1 - S(4) * q2 * q0;
  if (close(disc, S(0), tol)) {
    // Double root: always expressible in the base field.
    out.push_back({-q1 / (S(2) * q2), S(1)});
    return out;
  }
  if constexpr (is_exact_v<S>) {
    auto root = gaussian_sqrt(disc);
    if (!root) return out;  // lives in a quadratic extension
    out.push_back({(-q1 + *root) / (S(2) * q2), S(1)});
    out.push_back({(-q1 - *root) / (S(2) * q2), S(1)});
  } else {
    S root = std::sqrt(disc);
    out.push_back({(-q1 + root) / (S(2) * q2), S(1)});
    out.push_back({(-q1 - root) / (S(2) * q2), S(1)});
  }
  return out;
}

template <class S>
MoebiusFixedPoints<S> fixed_points(const Mat2<S>& m, double tol) {
  if (!m.sl2_flag()) throw DomainError("fixed_points: input not sl2-flagged");
  MoebiusFixedPoints<S> fp;
  if (m.is_central(tol)) {
    fp.count = FixedPointCount::all;
    return fp;
  }
  S disc = sl2_discriminant(m);
  bool parabolic = close(disc, S(0), tol);
  fp.count = parabolic ? FixedPointCount::one : FixedPointCount::two;
  fp.points = rational_fixed_points(m, tol);
  if constexpr (is_exact_v<S>) {
    if (fp.points.empty() && !parabolic)
      throw NumericError(
          "fixed points are irrational over Q(i); use the float backend");
  }
  return fp;
}

}  // namespace repvar
