#pragma once

#include <vector>

#include "repvar/sgood.hpp"

namespace repvar {

inline constexpr double kFiberTolerance = 1e-9;

// A pair (A, B) with [A, B] = target, together with the achieved residual
// (max-norm of [A,B] - target; identically zero on the exact backend).
template <class S>
struct FiberPoint {
  Mat2<S> A, B, target;
  RealOf<S> residual;

  FiberPoint(Mat2<S> a, Mat2<S> b, Mat2<S> tgt,
             double tol = kFiberTolerance)
      : A(std::move(a)), B(std::move(b)), target(std::move(tgt)),
        residual(max_norm_distance(mat_commutator(A, B), target)) {
    if constexpr (is_exact_v<S>) {
      if (residual != 0)
        throw NumericError("fiber point residual nonzero on exact backend");
    } else {
      if (residual > tol)
        throw NumericError("fiber point residual above tolerance");
    }
  }
};

// A sampled path: parameter t strictly increasing from 0 to 1, one or more
// matrices per sample (single matrices for target paths, pairs for lifts).
template <class S>
struct MatrixPath {
  struct Sample {
    double t;
    std::vector<Mat2<S>> mats;
  };
  std::vector<Sample> samples;
  double step_bound = 0;

  void validate() const {
    if (samples.size() < 2) throw DomainError("path needs >= 2 samples");
    if (samples.front().t != 0.0 || samples.back().t != 1.0)
      throw DomainError("path parameter must run from 0 to 1");
    for (std::size_t i = 1; i < samples.size(); ++i)
      if (!(samples[i - 1].t < samples[i].t))
        throw DomainError("path parameter must be strictly increasing");
  }
};

using MatrixPathC = MatrixPath<Complex>;

namespace detail {
template <class S>
Mat2<S> diag_target(const S& m) {
  return Mat2<S>::sl2(m, S(0), S(0), S(1) / m, 1e-12);
}

template <class S>
void require_regular_m(const S& m) {
  if (is_zero(m) || m == S(1) || m == S(-1))
    throw DomainError("fiber parameter m must avoid {0, 1, -1}");
}
}  // namespace detail

// The explicit base point (A0, B0) in the fiber over diag(m, 1/m):
// A0 = [[m^1/2, m-1],[0, m^-1/2]], B0 = [[m^-1/2, 0],[1, m^1/2]].
// The square-root branch is an explicit input.
template <class S>
FiberPoint<S> fiber_base_point(const S& m, const S& sqrt_m,
                               double tol = kFiberTolerance) {
  detail::require_regular_m(m);
  if (!close(sqrt_m * sqrt_m, m, tol))
    throw DomainError("sqrt_m^2 != m");
  Mat2<S> A0(sqrt_m, m - S(1), S(0), S(1) / sqrt_m, true);
  Mat2<S> B0(S(1) / sqrt_m, S(0), S(1), sqrt_m, true);
  return FiberPoint<S>(A0, B0, detail::diag_target(m), tol);
}

// Family S1 ("ab1", the chart with c != 0):
//   A = [[cmt, bms + am(m-1)t],[cs, ct]],  B = [[a, b],[c, am]]
// subject to det A = c^2 m t^2 - b c m s^2 - a c m (m-1) s t = 1 and
// det B = a^2 m - b c = 1.
template <class S>
FiberPoint<S> fiber_family_c(const S& m, const S& a, const S& b, const S& c,
                             const S& s, const S& t,
                             double tol = kFiberTolerance) {
  detail::require_regular_m(m);
  if (is_zero(c)) throw DomainError("family S1 requires c != 0");
  S det_a = c * c * m * t * t - b * c * m * s * s -
            a * c * m * (m - S(1)) * s * t;
  S det_b = a * a * m - b * c;
  if (!close(det_a, S(1), tol) || !close(det_b, S(1), tol))
    throw DomainError("family S1 determinant constraints violated");
  Mat2<S> A(c * m * t, b * m * s + a * m * (m - S(1)) * t, c * s, c * t, true);
  Mat2<S> B(a, b, c, a * m, true);
  return FiberPoint<S>(A, B, detail::diag_target(m), tol);
}

// Family S2 ("ab2", the chart with a != 0):
//   A = [[cs - bmt, a(m-1)s],[a(m-1)t, (c/m)s - bt]],  B = [[a, b],[c, am]]
// subject to det A = (c^2/m)s^2 + b^2 m t^2 - 2bc st - a^2 (m-1)^2 s t = 1
// and det B = a^2 m - b c = 1.  (The displayed upper-left entry cs + bmt
// fails AB = MBA; the solved form has cs - bmt.)
template <class S>
FiberPoint<S> fiber_family_a(const S& m, const S& a, const S& b, const S& c,
                             const S& s, const S& t,
                             double tol = kFiberTolerance) {
  detail::require_regular_m(m);
  if (is_zero(a)) throw DomainError("family S2 requires a != 0");
  Mat2<S> A(c * s - b * m * t, a * (m - S(1)) * s, a * (m - S(1)) * t,
            (c / m) * s - b * t, true);
  S det_b = a * a * m - b * c;
  if (!close(A.det(), S(1), tol) || !close(det_b, S(1), tol))
    throw DomainError("family S2 determinant constraints violated");
  Mat2<S> B(a, b, c, a * m, true);
  return FiberPoint<S>(A, B, detail::diag_target(m), tol);
}

// Solves [A, B] = M exactly over the scalar field for any target with
// tr M not in {2, -2}: choose a conjugator G with (G^-1 M G)_22 = b^2 for a
// fixed rational b (two linear equations in two entries of G), then read the
// normal-form coordinates off the relator map g(a,b,c) = G^-1 M G.
template <class S>
FiberPoint<S> solve_commutator(const Mat2<S>& M, double tol = kFiberTolerance) {
  if (!M.sl2_flag()) throw DomainError("solve_commutator: target not sl2");
  S tr = M.trace();
  if (close(tr, S(2), tol) || close(tr, S(-2), tol))
    throw DomainError("solve_commutator: tr M = +-2 is excluded");

  // Any fixed value outside {0, 1, -1} works; 2 + i keeps every power of the
  // produced B off the real-trace locus (no power of 2 + i is real).
  const S b = S(2) + imaginary_unit<S>();
  // (G^-1 M G)_22 = (-g3, g1) M (g2, g4)^T with G = [[g1,g2],[g3,g4]],
  // det G = 1.  Fix (g1, g3) so the 2x2 linear system for (g2, g4) is
  // regular; its determinant is g1^2 m21 + g1 g3 (m22 - m11) - g3^2 m12,
  // which vanishes for all (g1,g3) only when M is central.
  const S candidates[3][2] = {{S(1), S(0)}, {S(0), S(1)}, {S(1), S(1)}};
  int best = -1;
  RealOf<S> best_weight = ScalarTraits<S>::real_zero();
  S best_k1 = S(0), best_k2 = S(0), best_det = S(0);
  for (int i = 0; i < 3; ++i) {
    const S& g1 = candidates[i][0];
    const S& g3 = candidates[i][1];
    S k1 = g1 * M.at(1, 0) - g3 * M.at(0, 0);
    S k2 = g1 * M.at(1, 1) - g3 * M.at(0, 1);
    S det_sys = g1 * k1 + g3 * k2;
    if (is_zero(det_sys)) continue;
    RealOf<S> weight = norm_sq(det_sys);
    if (best < 0 || weight > best_weight) {
      best = i;
      best_weight = weight;
      best_k1 = k1;
      best_k2 = k2;
      best_det = det_sys;
    }
  }
  if (best < 0)
    throw NumericError("solve_commutator: no regular conjugator found");
  const S& g1 = candidates[best][0];
  const S& g3 = candidates[best][1];
  // k1 g2 + k2 g4 = b^2  and  -g3 g2 + g1 g4 = 1 (det G = 1).
  S g2 = (b * b * g1 - best_k2) / best_det;
  S g4 = (b * b * g3 + best_k1) / best_det;
  Mat2<S> G(g1, g2, g3, g4, true);
  Mat2<S> Mn = M.conjugated_by(G.inverse());
  S c = -Mn.at(1, 0) / b;
  S a = (Mn.at(0, 1) + b * c) / (S(1) - b * b);
  Mat2<S> A = Mat2<S>::sl2(a, S(1), S(-1), S(0), tol).conjugated_by(G);
  Mat2<S> B = Mat2<S>::sl2(b, S(0), c, S(1) / b, tol).conjugated_by(G);
  return FiberPoint<S>(A.as_sl2(tol), B.as_sl2(tol), M, tol);
}

// Numeric rank of the differential of (A,B) -> [A,B] on the sl2 x sl2
// tangent space (threshold 1e-8 on singular values); 3 iff submersive.
int commutator_jacobian_rank(const Mat2c& A, const Mat2c& B,
                             double sv_threshold = 1e-8);

// The three explicit sign-flip paths, composed as needed to join
// (A0, B0) to (eps_a A0, eps_b B0) inside the fiber of diag(m, 1/m); every
// sample lies in S1 and S2.  Endpoints are substituted exactly.
MatrixPathC sign_flip_path(const Complex& m, const Complex& sqrt_m, int eps_a,
                           int eps_b, int n_samples,
                           double tol = kFiberTolerance);

using FiberPointQ = FiberPoint<GaussianRational>;
using FiberPointC = FiberPoint<Complex>;

}  // namespace repvar
