#pragma once

#include <utility>
#include <vector>

#include "repvar/irreducibility.hpp"

namespace repvar {

// tr[A,B] for the normal-form matrices A = [[a,1],[-1,0]], B = [[b,0],[c,1/b]].
// (The sign of the b^-2 term follows the matrix product, r1 + r4.)
template <class S>
S sgood_trace_of_commutator(const S& a, const S& b, const S& c) {
  if (is_zero(b)) throw DomainError("sgood trace needs b != 0");
  return a * b * c - a * c / b + c * c + b * b + S(1) / (b * b);
}

// Normal-form coordinates (a, b, c) plus the tail images C_3..C_k of a
// rank-k free group.
template <class S>
struct SGoodCoords {
  S a, b, c;
  std::vector<Mat2<S>> tail;

  SGoodCoords(S a_, S b_, S c_, std::vector<Mat2<S>> tail_ = {},
              double tol = 1e-10)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)),
        tail(std::move(tail_)) {
    if (close(b, S(0), tol) || close(b, S(1), tol) || close(b, S(-1), tol))
      throw DomainError("sgood coordinates need b not in {0, 1, -1}");
    if (close(sgood_trace_of_commutator(a, b, c), S(2), tol))
      throw DomainError("sgood coordinates need tr[A,B] != 2");
    for (const auto& m : tail)
      if (!m.sl2_flag()) throw DomainError("sgood tail image not sl2-flagged");
  }

  int rank() const { return 2 + static_cast<int>(tail.size()); }

  Mat2<S> matrix_a() const {
    return Mat2<S>::sl2(a, S(1), S(-1), S(0));
  }
  Mat2<S> matrix_b() const {
    return Mat2<S>::sl2(b, S(0), c, S(1) / b);
  }

  Representation<S> to_representation() const {
    std::vector<Mat2<S>> imgs = {matrix_a(), matrix_b()};
    imgs.insert(imgs.end(), tail.begin(), tail.end());
    return Representation<S>(Presentation::free_group(rank()),
                             std::move(imgs));
  }
};

// f(a,b,c) = (tr A, tr B, tr AB) = (a, b + 1/b, ab + c), the 2-fold
// covering of the character map on the normal-form chart.
template <class S>
std::array<S, 3> character_cover_f(const S& a, const S& b, const S& c) {
  if (is_zero(b) || b == S(1) || b == S(-1))
    throw DomainError("character cover needs b not in {0, 1, -1}");
  return {a, b + S(1) / b, a * b + c};
}

// The word list a character must carry for lift_character on rank k: alpha,
// beta, alpha*beta, then gamma_i, alpha*gamma_i, beta*gamma_i,
// alpha*beta*gamma_i for each tail generator (indices 2..k-1).
std::vector<FreeWord> sgood_character_words(int rank);

namespace detail {

// Both roots of b^2 - y b + 1 = 0 ordered (sheet 1, sheet 2): sheet 1 has
// |b| >= 1, ties broken by nonnegative imaginary part.
template <class S>
std::pair<S, S> sheet_roots(const S& y) {
  S disc = y * y - S(4);
  S root;
  if constexpr (is_exact_v<S>) {
    auto r = gaussian_sqrt(disc);
    if (!r)
      throw NumericError(
          "x(beta)^2 - 4 is not a perfect square over Q(i); "
          "use the float backend");
    root = *r;
  } else {
    root = std::sqrt(disc);
  }
  S b1 = (y + root) / S(2);
  S b2 = (y - root) / S(2);
  auto sheet_one_first = [](const S& p, const S& q) {
    auto np = norm_sq(p), nq = norm_sq(q);
    if (np != nq) return np > nq;
    if constexpr (is_exact_v<S>) {
      return p.im() >= 0;
    } else {
      return p.imag() >= 0;
    }
  };
  if (sheet_one_first(b1, b2)) return {b1, b2};
  return {b2, b1};
}

}  // namespace detail

// Lifts a character on the sgood word list to coordinates on the requested
// sheet; recovers each tail matrix C_i from its four theta traces.
template <class S>
SGoodCoords<S> lift_character(const Character<S>& x, int sheet,
                              double tol = 1e-8) {
  if (sheet != 1 && sheet != 2) throw DomainError("sheet must be 1 or 2");
  if (x.words.size() < 3 || (x.words.size() - 3) % 4 != 0)
    throw DomainError("character word list does not match the sgood layout");
  int rank = 2 + static_cast<int>((x.words.size() - 3) / 4);
  if (x.words != sgood_character_words(rank))
    throw DomainError("character words are not the canonical sgood list");

  const S& ta = x.traces[0];
  const S& tb = x.traces[1];
  const S& tab = x.traces[2];
  if (close(tb, S(2), tol) || close(tb, S(-2), tol))
    throw DomainError("lift_character: x(beta) = +-2 is excluded");

  auto [b1, b2] = detail::sheet_roots(tb);
  S b = sheet == 1 ? b1 : b2;
  S a = ta;
  S c = tab - a * b;
  if (close(sgood_trace_of_commutator(a, b, c), S(2), 1e-10))
    throw DomainError("lift_character: x([alpha,beta]) = 2 is excluded");

  SGoodCoords<S> coords(a, b, c);
  Mat2<S> A = coords.matrix_a(), B = coords.matrix_b();
  for (int i = 0; i < rank - 2; ++i) {
    std::array<S, 4> t = {x.traces[3 + 4 * i], x.traces[3 + 4 * i + 1],
                          x.traces[3 + 4 * i + 2], x.traces[3 + 4 * i + 3]};
    Mat2<S> Ci = theta_inverse(A, B, t);
    if (!close(Ci.det(), S(1), tol))
      throw NumericError("lift_character: inconsistent tail traces (det != 1)");
    coords.tail.push_back(Ci.as_sl2(tol));
  }
  return coords;
}

template <class S>
struct SGoodConjugation {
  SGoodCoords<S> coords;
  Mat2<S> conjugator;               // G with (G rho G^-1) in normal form
  std::vector<FreeWord> new_basis;  // ordered free basis, in input generators
};

// Conjugates an irreducible free-group representation into
// the sgood normal form, after an ordered basis change making
// tr rho[alpha,beta] != 2 and tr rho(beta) != +-2.
template <class S>
SGoodConjugation<S> to_sgood(const Representation<S>& rho, double tol = 1e-9);

// The relator map g(a,b,c) = [A,B] in closed form:
// r1 = b^-2 - a b^-1 c + a b c + c^2, r2 = a - a b^2 - b c, r3 = -b c,
// r4 = b^2.
template <class S>
Mat2<S> relator_map_g(const S& a, const S& b, const S& c) {
  if (is_zero(b) || b == S(1) || b == S(-1))
    throw DomainError("relator map needs b not in {0, 1, -1}");
  S r1 = S(1) / (b * b) - a * c / b + a * b * c + c * c;
  S r2 = a - a * b * b - b * c;
  S r3 = -b * c;
  S r4 = b * b;
  return Mat2<S>::sl2(r1, r2, r3, r4, 1e-6);
}

// The two coordinate-patch Jacobian determinants certifying that g is a
// submersion: 2(b^-2 - 1)(1 - abc + ab^3c + b^2c^2) and
// 2(1 - b^2)(-a + ab^2 + bc); identically 2 b^2 (b^-2 - 1) r1 and
// -2 (1 - b^2) r2.
template <class S>
std::pair<S, S> g_jacobian_certificates(const S& a, const S& b, const S& c) {
  if (is_zero(b) || b == S(1) || b == S(-1))
    throw DomainError("jacobian certificates need b not in {0, 1, -1}");
  S first = S(2) * (S(1) / (b * b) - S(1)) *
            (S(1) - a * b * c + a * b * b * b * c + b * b * c * c);
  S second = S(2) * (S(1) - b * b) * (-a + a * b * b + b * c);
  return {first, second};
}

// ---------------------------------------------------------------------------

template <class S>
SGoodConjugation<S> to_sgood(const Representation<S>& rho, double tol) {
  const Presentation& pres = rho.presentation();
  if (pres.is_surface() || pres.rank() < 2)
    throw DomainError("to_sgood needs a free presentation of rank >= 2");

  IrreducibilityWitness<S> wit = find_irreducible_pair(rho.images(), tol);

  // Assemble the ordered basis starting (c_word, d_word, ...).
  const int k = pres.rank();
  std::vector<FreeWord> basis = {wit.c_word, wit.d_word};
  std::vector<bool> used(k, false);
  auto mark = [&](const FreeWord& w) {
    for (const auto& [gen, exp] : w.syllables()) used[gen] = true;
  };
  mark(wit.c_word);
  if (wit.d_form == WitnessForm::aba) {
    // d = g_a g_b g_a: {g_a, d} spans <g_a, g_b>, so keep g_a and drop g_b.
    int ga = wit.d_word.syllables().front().first;
    basis.push_back(FreeWord::generator(ga));
    mark(wit.d_word);
  } else {
    mark(wit.d_word);
  }
  for (int g = 0; g < k; ++g)
    if (!used[g]) basis.push_back(FreeWord::generator(g));
  if (static_cast<int>(basis.size()) != k)
    throw NumericError("to_sgood: basis assembly lost a generator");

  Mat2<S> A = rho.evaluate(basis[0]);
  Mat2<S> D = rho.evaluate(basis[1]);

  // Adjust beta within <alpha, beta> so tr(beta) != +-2; multiplying by
  // alpha^j does not change the commutator.
  auto trace_ok = [&](const Mat2<S>& m) {
    return !close(m.trace(), S(2), tol) && !close(m.trace(), S(-2), tol);
  };
  bool found = false;
  for (int swap = 0; swap < 2 && !found; ++swap) {
    const Mat2<S>& X = swap ? D : A;
    const Mat2<S>& Y = swap ? A : D;
    const FreeWord& xw = swap ? basis[1] : basis[0];
    const FreeWord& yw = swap ? basis[0] : basis[1];
    for (int j : {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6}) {
      Mat2<S> cand = Y;
      FreeWord cw = yw;
      if (j != 0) {
        Mat2<S> xj = Mat2<S>::identity();
        FreeWord xjw;
        for (int q = 0; q < (j > 0 ? j : -j); ++q) {
          xj = xj * (j > 0 ? X : X.inverse());
          xjw = xjw * (j > 0 ? xw : xw.inverse());
        }
        cand = Y * xj;
        cw = yw * xjw;
      }
      if (trace_ok(cand)) {
        basis[0] = xw;
        basis[1] = cw;
        A = X;
        D = cand;
        found = true;
        break;
      }
    }
  }
  if (!found)
    throw NumericError("to_sgood: no basis change gives tr(beta) != +-2");

  // e2' = eigenvector of B that is not an eigenvector of A; e1' = A e2'.
  auto lines = rational_fixed_points(D, tol);
  if (lines.empty())
    throw NumericError(
        "to_sgood: eigenvalues of beta are irrational over Q(i); "
        "use the float backend");
  // Order candidates so that the resulting b = 1/eigenvalue satisfies the
  // sheet-1 rule (|b| >= 1, ties by imaginary part) when possible.
  auto eigenvalue_on = [&](const ProjectivePoint<S>& p) {
    auto img = moebius_apply(D, p);  // (B z, B w) direction
    return norm_sq(p.z) >= norm_sq(p.w) ? img.z / p.z : img.w / p.w;
  };
  auto prefer = [&](const ProjectivePoint<S>& p, const ProjectivePoint<S>& q) {
    S bp = S(1) / eigenvalue_on(p), bq = S(1) / eigenvalue_on(q);
    auto np = norm_sq(bp), nq = norm_sq(bq);
    if (np != nq) return np > nq;
    if constexpr (is_exact_v<S>) {
      return bp.im() >= 0;
    } else {
      return bp.imag() >= 0;
    }
  };
  if (lines.size() == 2 && !prefer(lines[0], lines[1]))
    std::swap(lines[0], lines[1]);
  const ProjectivePoint<S>* chosen = nullptr;
  for (const auto& p : lines)
    if (!detail::is_eigenline(A, p, tol)) {
      chosen = &p;
      break;
    }
  if (!chosen)
    throw NumericError("to_sgood: all eigenvectors of beta fixed by alpha");

  // Columns (A e2', e2'); conjugating by its inverse puts rho in normal form.
  S z = chosen->z, w = chosen->w;
  S e1z = A.at(0, 0) * z + A.at(0, 1) * w;
  S e1w = A.at(1, 0) * z + A.at(1, 1) * w;
  Mat2<S> g0(e1z, z, e1w, w, false);
  Mat2<S> G = g0.inverse();

  Mat2<S> An = A.conjugated_by(G);
  Mat2<S> Bn = D.conjugated_by(G);
  SGoodCoords<S> coords(An.at(0, 0), Bn.at(0, 0), Bn.at(1, 0));
  if (!An.entrywise_close(coords.matrix_a(), 1e-7) ||
      !Bn.entrywise_close(coords.matrix_b(), 1e-7))
    throw NumericError("to_sgood: normal form reconstruction mismatch");
  for (std::size_t i = 2; i < basis.size(); ++i)
    coords.tail.push_back(
        rho.evaluate(basis[i]).conjugated_by(G).as_sl2(1e-7));
  return SGoodConjugation<S>{std::move(coords), G, std::move(basis)};
}

}  // namespace repvar
