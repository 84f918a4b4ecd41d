#pragma once

#include <utility>
#include <vector>

#include "repvar/representation.hpp"
#include "repvar/trace_lab.hpp"

namespace repvar {

inline constexpr double kClusterTolerance = 1e-8;

enum class WitnessForm { direct, aba };

// A constructive irreducibility certificate: tr([eval(c_word), eval(d_word)])
// != 2.  d_form == aba means d_word = g_a * g_b * g_a for distinct
// generators, per the three-fixed-point-class case.
template <class S>
struct IrreducibilityWitness {
  FreeWord c_word, d_word;
  S trace_value;
  WitnessForm d_form = WitnessForm::direct;
};

struct CommonFixedPointError : DomainError {
  using DomainError::DomainError;
};

// True iff the matrix has order 2 in PSL(2,C): trace zero.
template <class S>
bool order_two_test(const Mat2<S>& A, double tol = 1e-9) {
  if (!A.sl2_flag()) throw DomainError("order_two_test: input not sl2");
  return close(A.trace(), S(0), tol);
}

namespace detail {

// Does some point of the sphere get fixed by every generator?  Candidates
// come from the first noncentral generator; if its fixed points are
// irrational (exact backend), a common point forces all fixed-point sets to
// coincide, which the proportionality test detects.
template <class S>
bool has_global_fixed_point(const std::vector<Mat2<S>>& gens, double tol) {
  int first = -1;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!gens[i].is_central(tol)) {
      first = static_cast<int>(i);
      break;
    }
  if (first < 0) return true;  // all +-I: everything is fixed
  auto candidates = rational_fixed_points(gens[first], tol);
  for (const auto& p : candidates) {
    bool ok = true;
    for (const auto& g : gens)
      if (!g.is_central(tol) && !is_eigenline(g, p, tol)) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  if constexpr (is_exact_v<S>) {
    if (candidates.empty()) {
      bool all_same = true;
      for (const auto& g : gens)
        if (!g.is_central(tol) && !same_fixed_set(gens[first], g, tol)) {
          all_same = false;
          break;
        }
      if (all_same) return true;
    }
  }
  return false;
}

}  // namespace detail

// Irreducibility detector: given generators with no common fixed point,
// produce
// (C, D) with tr[C, D] != 2, where D is a generator or A*B*A.
template <class S>
IrreducibilityWitness<S> find_irreducible_pair(const std::vector<Mat2<S>>& gens,
                                               double tol = kClusterTolerance) {
  if (gens.empty()) throw DomainError("find_irreducible_pair: empty input");
  for (const auto& g : gens)
    if (!g.sl2_flag())
      throw DomainError("find_irreducible_pair: generator not sl2-flagged");
  if (detail::has_global_fixed_point(gens, tol))
    throw CommonFixedPointError(
        "generators share a fixed point on the sphere (reducible group)");

  // Work with the noncentral generators ("we may assume S does not contain
  // +-I"), remembering original indices for the returned words.
  std::vector<int> idx;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!gens[i].is_central(tol)) idx.push_back(static_cast<int>(i));

  auto verified = [&](int ci, const FreeWord& dw, const Mat2<S>& D,
                      WitnessForm form) {
    IrreducibilityWitness<S> w;
    w.c_word = FreeWord::generator(ci);
    w.d_word = dw;
    w.d_form = form;
    w.trace_value = mat_commutator(gens[ci], D).trace();
    if (close(w.trace_value, S(2), tol))
      throw NumericError("irreducibility witness has tr[C,D] = 2");
    return w;
  };

  // Case 1: some generator is parabolic.  Its unique fixed point is not
  // global, so a generator moving it gives the pair.
  for (int ci : idx) {
    if (!close(sl2_discriminant(gens[ci]), S(0), tol)) continue;
    auto pts = rational_fixed_points(gens[ci], tol);
    for (int di : idx) {
      if (di == ci) continue;
      if (!detail::is_eigenline(gens[di], pts.front(), tol))
        return verified(ci, FreeWord::generator(di), gens[di],
                        WitnessForm::direct);
    }
    throw NumericError("parabolic fixed point unexpectedly global");
  }

  // Case 2: all generators have two fixed points.  Group them by equal
  // fixed-point sets; two classes sharing no point give a direct pair.
  std::vector<std::vector<int>> classes;
  for (int gi : idx) {
    bool placed = false;
    for (auto& cls : classes)
      if (same_fixed_set(gens[cls.front()], gens[gi], tol)) {
        cls.push_back(gi);
        placed = true;
        break;
      }
    if (!placed) classes.push_back({gi});
  }
  for (std::size_t p = 0; p < classes.size(); ++p)
    for (std::size_t q = p + 1; q < classes.size(); ++q) {
      int ci = classes[p].front(), di = classes[q].front();
      if (!share_fixed_point(gens[ci], gens[di], tol))
        return verified(ci, FreeWord::generator(di), gens[di],
                        WitnessForm::direct);
    }

  // Case 3: every pair of classes shares exactly one point; there must be
  // exactly three classes.  Cyclically permute (A,B,C) until tr(AB) != 0,
  // then the pair is (C, ABA).
  if (classes.size() != 3)
    throw NumericError(
        "fixed-point class analysis expected exactly three classes");
  int a = classes[0].front(), b = classes[1].front(), c = classes[2].front();
  for (int rot = 0; rot < 3; ++rot) {
    if (!order_two_test(gens[a] * gens[b], tol)) {
      Mat2<S> D = gens[a] * gens[b] * gens[a];
      FreeWord dw = FreeWord::generator(a) * FreeWord::generator(b) *
                    FreeWord::generator(a);
      return verified(c, dw, D, WitnessForm::aba);
    }
    int t = a;
    a = b;
    b = c;
    c = t;
  }
  // tr(AB) = tr(BC) = tr(CA) = 0 forces p^2 = -p^2, which is impossible.
  throw NumericError("all three pairwise products have order 2 (impossible)");
}

// Punctured-torus search: find words (gamma, delta) of simple loops
// intersecting
// once with tr rho([gamma, delta]) != 2.  Standard same-handle pairs are
// preferred; otherwise the groupirrep witness (direct or aba) is returned.
template <class S>
std::pair<std::pair<FreeWord, FreeWord>, S> find_irreducible_punctured_torus(
    const Representation<S>& rho, double tol = kClusterTolerance) {
  const Presentation& pres = rho.presentation();
  if (!pres.is_surface())
    throw DomainError("punctured torus search needs a surface presentation");
  for (int i = 1; i <= pres.genus(); ++i) {
    FreeWord g = FreeWord::generator(pres.alpha(i));
    FreeWord d = FreeWord::generator(pres.beta(i));
    S t = mat_commutator(rho.image(pres.alpha(i)), rho.image(pres.beta(i)))
              .trace();
    if (!close(t, S(2), tol)) return {{g, d}, t};
  }
  IrreducibilityWitness<S> w;
  try {
    w = find_irreducible_pair(rho.images(), tol);
  } catch (const CommonFixedPointError&) {
    throw DomainError(
        "representation is reducible; no irreducible punctured torus");
  }
  return {{w.c_word, w.d_word}, w.trace_value};
}

}  // namespace repvar
