#pragma once

#include <tuple>

#include "repvar/fibers.hpp"

namespace repvar {

inline constexpr double kSmallnessBound = 0.1;

// A near-identity (or near-parabolic) boundary value to hit.
template <class S>
struct BoundaryTarget {
  Mat2<S> matrix;
  double smallness;  // max-norm distance to I, as a double for reporting

  explicit BoundaryTarget(Mat2<S> m)
      : matrix(std::move(m)),
        smallness(to_double_real<S>(
            max_norm_distance(matrix, Mat2<S>::identity()))) {
    if (!matrix.sl2_flag()) throw DomainError("boundary target must be sl2");
  }
};

namespace detail {
template <class S>
void require_small(const S& v, double bound, const char* what) {
  if (!modulus_at_most(v, bound))
    throw DomainError(std::string(what) + " exceeds the smallness bound");
}
}  // namespace detail

// Diagonal-abelian case: (A', B') near (diag(p,1/p), diag(q,1/q)) with
// [A', B'] = [[1, u],[v, 1+uv]].  Exact on the exact backend.
template <class S>
std::tuple<Mat2<S>, Mat2<S>, Mat2<S>> abelian_diagonal_commutator(
    const S& p, const S& q, const S& u, const S& v,
    double smallness = kSmallnessBound) {
  for (const S* excluded : {&p, &q}) {
    if (is_zero(*excluded) || *excluded == S(1) || *excluded == S(-1))
      throw DomainError("abelian case needs p, q outside {0, 1, -1}");
  }
  detail::require_small(u, smallness, "u");
  detail::require_small(v, smallness, "v");
  S p2 = p * p;
  S num = S(1) - p2 + p2 * q * q - p2 * u * v;
  S den_b12 = (p2 - S(1)) * q;
  S den_b21 = S(1) - p2 - p2 * u * v;
  if (is_zero(den_b21))
    throw DomainError("abelian case denominator 1 - p^2 - p^2 u v vanishes");
  Mat2<S> A(p, p * u, S(0), S(1) / p, true);
  Mat2<S> B(q, u * num / den_b12, p2 * q * v / den_b21,
            S(1) / q - p2 * u * v * num / (den_b12 * (-den_b21)), true);
  Mat2<S> comm = mat_commutator(A, B);
  Mat2<S> want(S(1), u, v, S(1) + u * v, true);
  if constexpr (is_exact_v<S>) {
    if (!(comm == want))
      throw NumericError("abelian commutator formula mismatch");
  } else {
    if (!comm.entrywise_close(want, 1e-9))
      throw NumericError("abelian commutator formula mismatch");
  }
  return {A, B, comm};
}

// Near-identity products: C, D with CD = [[1+x, y],[z, (1+yz)/(1+x)]].  The
// branch of sqrt(x) is an explicit input; both branches give the same CD.
template <class S>
std::tuple<Mat2<S>, Mat2<S>, Mat2<S>> near_identity_product(
    const S& x, const S& y, const S& z, const S& sqrt_x,
    double smallness = kSmallnessBound) {
  if (x == S(-1)) throw DomainError("near-identity product needs x != -1");
  if (!close(sqrt_x * sqrt_x, x, 1e-10))
    throw DomainError("sqrt_x^2 != x");
  detail::require_small(x, smallness, "x");
  detail::require_small(y, smallness, "y");
  detail::require_small(z, smallness, "z");
  S opx = S(1) + x;
  Mat2<S> C(S(1), sqrt_x, (z - sqrt_x) / opx, (S(1) + z * sqrt_x) / opx, true);
  Mat2<S> D(S(1), (y - sqrt_x) / opx, sqrt_x, (S(1) + y * sqrt_x) / opx, true);
  Mat2<S> CD = C * D;
  Mat2<S> want(opx, y, z, (S(1) + y * z) / opx, true);
  if (!CD.entrywise_close(want, 1e-9))
    throw NumericError("near-identity product mismatch");
  return {C, D, CD};
}

// Float convenience: computes the principal branch of sqrt(x).
inline std::tuple<Mat2c, Mat2c, Mat2c> near_identity_product(
    const Complex& x, const Complex& y, const Complex& z,
    double smallness = kSmallnessBound) {
  return near_identity_product<Complex>(x, y, z, std::sqrt(x), smallness);
}

// Central case (rho(alpha) = +-I): A' = sign [[1+a, u+ua],[0, 1/(1+a)]] and
// the displayed B', with [A', B'] = [[1, u],[v, 1+uv]].  Requires
// |u|, |v| <= ratio |a| and |a| <= bound.
template <class S>
std::tuple<Mat2<S>, Mat2<S>, Mat2<S>> central_case_commutator(
    const S& a, const S& u, const S& v, int sign,
    double bound = kSmallnessBound, double ratio = 0.1) {
  if (sign != 1 && sign != -1) throw DomainError("sign must be +-1");
  if (is_zero(a)) throw DomainError("central case needs a != 0");
  detail::require_small(a, bound, "a");
  if constexpr (is_exact_v<S>) {
    mpq_class r = parse_rational(std::to_string(ratio));
    if (u.norm() > r * r * a.norm() || v.norm() > r * r * a.norm())
      throw DomainError("central case needs |u|, |v| <= ratio |a|");
  } else {
    if (std::abs(u) > ratio * std::abs(a) || std::abs(v) > ratio * std::abs(a))
      throw DomainError("central case needs |u|, |v| <= ratio |a|");
  }
  S opa = S(1) + a;
  S den1 = a * (S(2) + a);
  S uv = u * v;
  S den2 = uv + S(2) * a * (S(1) + uv) + a * a * (S(1) + uv);
  if (is_zero(den1) || is_zero(den2))
    throw DomainError("central case denominator vanishes");
  S opa2 = opa * opa;
  S sgn(sign);
  Mat2<S> A(sgn * opa, sgn * (u + u * a), S(0), sgn / opa, true);
  Mat2<S> B(S(1), u * (S(1) - opa2 * uv) / den1, -opa2 * v / den2,
            S(1) + opa2 * uv * (S(-1) + opa2 * uv) / (den1 * den2), true);
  Mat2<S> comm = mat_commutator(A, B);
  Mat2<S> want(S(1), u, v, S(1) + uv, true);
  if (!comm.entrywise_close(want, 1e-9))
    throw NumericError("central commutator formula mismatch");
  return {A, B, comm};
}

// The parabolic-deformation commutator
// M_p(u, v) = [[1+u, v],[-u^2/(p+pu+v), (p+v-uv)/(p+pu+v)]], det 1, rational
// in (p, u, v).
template <class S>
Mat2<S> parabolic_commutator_M(const S& p, const S& u, const S& v) {
  if (is_zero(p)) throw DomainError("parabolic case needs p != 0");
  S den = p + p * u + v;
  if (is_zero(den))
    throw DomainError("parabolic case denominator p + pu + v vanishes");
  return Mat2<S>::sl2(S(1) + u, v, -u * u / den, (p + v - u * v) / den, 1e-9);
}

// The underlying deformed parabolic A' with [A', [[1,p],[0,1]]] = M_p(u,v);
// needs a branch of sqrt(1 + u + v/p).  The original top-right entry q only
// moves A' within the solution line, not the commutator.
template <class S>
Mat2<S> parabolic_commutator_A(const S& p, const S& u, const S& v,
                               const S& sqrt_arg, const S& q = S(1)) {
  if (is_zero(p)) throw DomainError("parabolic case needs p != 0");
  S den = p + p * u + v;
  if (is_zero(den)) throw DomainError("parabolic denominator vanishes");
  if (!close(sqrt_arg * sqrt_arg, S(1) + u + v / p, 1e-10))
    throw DomainError("sqrt_arg^2 != 1 + u + v/p");
  if (is_zero(sqrt_arg)) throw DomainError("sqrt argument vanishes");
  return Mat2<S>::sl2(sqrt_arg, q, (-u / p) / sqrt_arg,
                      (-q * u + p * sqrt_arg) / den, 1e-9);
}

// Result of the parabolic product solve: w plus the factors C = M_p(...),
// D = M_q(w, 0) whose product is [[1+a, b],[c, (1+bc)/(1+a)]].
struct ParabolicProductSolution {
  Complex w;
  Mat2c C, D, product;
  double bound_ratio;  // |w| / (sqrt|c| + |a|), reported as K
};

ParabolicProductSolution parabolic_product_solve(
    const Complex& a, const Complex& b, const Complex& c, const Complex& p,
    const Complex& q, double smallness = kSmallnessBound, double tol = 1e-10);

// A path of upper-triangular pairs from (lambda0, d0, mu0, e0) to
// (lambda1, d1, mu1, e1) whose interior samples have lambda, mu outside
// {-1, 0, 1}, d != 0, and nontrivial commutator (e != d lambda (mu^2-1) /
// (mu (lambda^2-1))); hence nonabelian image and no trace +-2 generators.
struct UpperTriangularData {
  Complex lambda, d, mu, e;
};
MatrixPathC reducible_nonabelian_path(const UpperTriangularData& rho0,
                                      const UpperTriangularData& rho1,
                                      int n_samples);

// Boundary-extension solver.  `images` lists generator images for the surface
// presentation, where the caller may already have deformed the fixed part
// (so the relator can be off by up to the boundary perturbation).  Returns a
// valid representation agreeing with `images` on `fixed_gens`, whose
// complementary-handle product of commutators equals `target.matrix`.  The
// complement must consist of at least two whole trailing handles; Newton
// steps are damped so the complement's generator displacement stays within
// 10x the boundary perturbation.  When the complement restriction is abelian
// with diagonal images, the explicit abelian/near-identity constructors are
// used instead of Newton.
RepresentationC extend_boundary_deformation(
    const Presentation& pres, const std::vector<Mat2c>& images,
    const std::vector<int>& fixed_gens, const BoundaryTarget<Complex>& target,
    double max_norm);

}  // namespace repvar
