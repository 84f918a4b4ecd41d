#pragma once

#include <array>
#include <optional>

#include "repvar/linsolve.hpp"
#include "repvar/moebius.hpp"
#include "repvar/word.hpp"

namespace repvar {

// tr[A,B] for A = diag(x,1/x), B = [[a,b],[c,d]]:  2 - bc (x - 1/x)^2.
template <class S>
S commutator_trace_diagonal_form(const S& x, const S& b, const S& c) {
  if (is_zero(x)) throw DomainError("diagonal form needs x != 0");
  S d = x - S(1) / x;
  return S(2) - b * c * d * d;
}

// tr[A,B] for A = [[1,x],[0,1]], B = [[a,b],[c,d]]:  2 + c^2 x^2.
template <class S>
S commutator_trace_parabolic_form(const S& x, const S& c) {
  return S(2) + c * c * x * x;
}

template <class S>
struct ReducibilityReport {
  bool reducible = false;
  // Common eigenvector direction, when expressible over the backend.
  std::optional<ProjectivePoint<S>> invariant_line;
  // Exact backend only: the pair is reducible but its common eigenlines live
  // in a quadratic extension of Q(i) (possible only for commuting pairs).
  bool line_in_extension = false;
  S trace_of_commutator = S(2);
};

namespace detail {
template <class S>
bool is_eigenline(const Mat2<S>& m, const ProjectivePoint<S>& p, double tol) {
  return moebius_apply(m, p).same_point_as(p, tol);
}
}  // namespace detail

// Reducibility report: the pair is reducible iff A and B share an
// eigenvector direction, iff tr[A,B] = 2.  Both routes are computed and
// cross-checked.
template <class S>
ReducibilityReport<S> reducibility_report(const Mat2<S>& A, const Mat2<S>& B,
                                          double tol = 1e-9) {
  if (!A.sl2_flag() || !B.sl2_flag())
    throw DomainError("reducibility_report: inputs must be sl2-flagged");
  ReducibilityReport<S> rep;
  rep.trace_of_commutator = mat_commutator(A, B).trace();

  auto try_lines = [&](const Mat2<S>& from, const Mat2<S>& against) {
    for (const auto& line : rational_fixed_points(from, tol))
      if (detail::is_eigenline(against, line, tol)) {
        rep.reducible = true;
        rep.invariant_line = line;
        return true;
      }
    return false;
  };

  if (A.is_central(tol)) {
    rep.reducible = true;
    auto lines = rational_fixed_points(B, tol);
    if (!lines.empty())
      rep.invariant_line = lines.front();
    else if (B.is_central(tol))
      rep.invariant_line = ProjectivePoint<S>{S(0), S(1)};  // e1 direction
    else
      rep.line_in_extension = true;
  } else if (B.is_central(tol)) {
    rep.reducible = true;
    auto lines = rational_fixed_points(A, tol);
    if (!lines.empty())
      rep.invariant_line = lines.front();
    else
      rep.line_in_extension = true;
  } else if (try_lines(A, B) || try_lines(B, A)) {
    // invariant_line set inside try_lines
  } else if constexpr (is_exact_v<S>) {
    // Neither matrix has a rational eigenline shared with the other.  The
    // remaining reducible configuration is a commuting pair whose common
    // eigenlines are Galois conjugate over Q(i).
    if (A * B == B * A) {
      rep.reducible = true;
      rep.line_in_extension = true;
    }
  }

  // Cross-check the trace criterion against the eigenvector route.
  bool trace_says = close(rep.trace_of_commutator, S(2), tol);
  if (trace_says != rep.reducible)
    throw NumericError(
        "reducibility: trace criterion and eigenvector search disagree");
  return rep;
}

// The 4x4 matrix of theta_{A,B} on the basis {E11, E12, E21, E22} of M_2(C),
// rows (tr M, tr AM, tr BM, tr ABM).  tr(X E_ij) = X_ji.
template <class S>
DenseMatrix<S> theta_matrix(const Mat2<S>& A, const Mat2<S>& B) {
  DenseMatrix<S> t(4, 4);
  const Mat2<S> mats[4] = {Mat2<S>::identity(), A, B, A * B};
  for (int r = 0; r < 4; ++r) {
    const Mat2<S>& X = mats[r];
    t.at(r, 0) = X.at(0, 0);
    t.at(r, 1) = X.at(1, 0);
    t.at(r, 2) = X.at(0, 1);
    t.at(r, 3) = X.at(1, 1);
  }
  return t;
}

namespace detail {
template <class S>
void require_theta_regular(const Mat2<S>& A, const Mat2<S>& B, double tol) {
  if (close(mat_commutator(A, B).trace(), S(2), tol))
    throw DomainError("theta is singular: tr[A,B] = 2");
}
}  // namespace detail

// theta_{A,B}(M) = (tr M, tr AM, tr BM, tr ABM); an isomorphism of M_2(C)
// with C^4 exactly when tr[A,B] != 2.
template <class S>
std::array<S, 4> theta_map(const Mat2<S>& A, const Mat2<S>& B,
                           const Mat2<S>& M, double tol = 1e-10) {
  detail::require_theta_regular(A, B, tol);
  return {M.trace(), (A * M).trace(), (B * M).trace(), (A * B * M).trace()};
}

// The unique 2x2 matrix M with theta_map(A, B, M) = t.
template <class S>
Mat2<S> theta_inverse(const Mat2<S>& A, const Mat2<S>& B,
                      const std::array<S, 4>& t, double tol = 1e-10) {
  detail::require_theta_regular(A, B, tol);
  auto x = solve_linear(theta_matrix(A, B), {t[0], t[1], t[2], t[3]});
  return Mat2<S>(x[0], x[1], x[2], x[3], false);
}

// The explicit kernel element [[alpha, alpha^beta], [alpha^{beta^2},
// alpha^{beta^3}]] in generators (0, 1), with x^y = y^-1 x y.  It dies under
// every representation that is triangular on <alpha, beta>.
inline FreeWord kernel_witness() {
  FreeWord alpha = FreeWord::generator(0);
  auto conj_pow = [&](int k) {
    return alpha.conjugated_by(FreeWord::generator(1, k));
  };
  FreeWord u = word_commutator(alpha, conj_pow(1));
  FreeWord v = word_commutator(conj_pow(2), conj_pow(3));
  return word_commutator(u, v);
}

}  // namespace repvar
