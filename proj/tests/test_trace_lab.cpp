#include <doctest.h>

#include "repvar/trace_lab.hpp"
#include "repvar/representation.hpp"
#include "support.hpp"

using namespace repvar;
using test::gq;
using GQ = GaussianRational;

TEST_CASE("closed-form commutator traces") {
  // Diagonal form: (x=2, b=1, c=1) -> -1/4; cross-checked by the matrix
  // oracle in test_core.
  CHECK(commutator_trace_diagonal_form(gq(2), gq(1), gq(1)) == gq(-1, 4));
  CHECK(commutator_trace_diagonal_form(gq(1), gq(7), gq(-3)) == GQ(2));
  CHECK(commutator_trace_diagonal_form(gq(-1), gq(7), gq(-3)) == GQ(2));
  CHECK(commutator_trace_diagonal_form(gq(2), gq(0), gq(5)) == GQ(2));
  CHECK_THROWS_AS(commutator_trace_diagonal_form(gq(0), gq(1), gq(1)),
                  DomainError);

  // Parabolic form: (x=1, c=1) -> 3; (x=2, c=i) -> -2; c=0 -> 2.
  CHECK(commutator_trace_parabolic_form(gq(1), gq(1)) == GQ(3));
  CHECK(commutator_trace_parabolic_form(gq(2), GQ::i()) == GQ(-2));
  CHECK(commutator_trace_parabolic_form(gq(9), gq(0)) == GQ(2));

  // Oracle agreement on the parabolic form: A = [[1,1],[0,1]], B = [[1,0],[1,1]].
  Mat2q A(gq(1), gq(1), gq(0), gq(1), true);
  Mat2q B(gq(1), gq(0), gq(1), gq(1), true);
  CHECK(mat_commutator(A, B).trace() ==
        commutator_trace_parabolic_form(gq(1), gq(1)));
}

TEST_CASE("reducibility report") {
  // Both upper triangular: reducible with the e1 direction.
  Mat2q U1(gq(2), gq(3), gq(0), gq(1, 2), true);
  Mat2q U2(gq(5), gq(-2), gq(0), gq(1, 5), true);
  auto rep = reducibility_report(U1, U2);
  CHECK(rep.reducible);
  CHECK(rep.trace_of_commutator == GQ(2));
  REQUIRE(rep.invariant_line.has_value());
  CHECK(rep.invariant_line->same_point_as(
      ProjectivePoint<GQ>::infinity(), 0));  // e1 direction = infinity

  // diag(2,1/2) with [[1,1],[1,2]]: irreducible, trace -1/4.
  Mat2q A(gq(2), gq(0), gq(0), gq(1, 2), true);
  Mat2q B(gq(1), gq(1), gq(1), gq(2), true);
  auto rep2 = reducibility_report(A, B);
  CHECK(!rep2.reducible);
  CHECK(rep2.trace_of_commutator == gq(-1, 4));
  CHECK(!rep2.invariant_line.has_value());

  // Random conjugate of a triangular pair: reducible, conjugated line.
  std::mt19937_64 rng(17);
  Mat2q G = test::rand_sl2q(rng);
  auto rep3 = reducibility_report(U1.conjugated_by(G).as_sl2(),
                                  U2.conjugated_by(G).as_sl2());
  CHECK(rep3.reducible);
  REQUIRE(rep3.invariant_line.has_value());
  // The line is G * e1.
  auto expected = moebius_apply(G, ProjectivePoint<GQ>::infinity());
  CHECK(rep3.invariant_line->same_point_as(expected, 0));

  // Commuting pair with irrational eigenlines: reducible via the extension
  // marker, no rational line.
  Mat2q H(gq(2), gq(1), gq(1), gq(1), true);
  auto rep4 = reducibility_report(H, (H * H).as_sl2());
  CHECK(rep4.reducible);
  CHECK(rep4.line_in_extension);
  CHECK(!rep4.invariant_line.has_value());

  // +-I short-circuits.
  auto rep5 = reducibility_report(Mat2q::identity(), B);
  CHECK(rep5.reducible);
}

TEST_CASE("theta map and inverse") {
  Mat2q A(gq(2), gq(0), gq(0), gq(1, 2), true);
  Mat2q B(gq(1), gq(1), gq(1), gq(2), true);

  // M = I -> (2, trA, trB, trAB).
  auto t = theta_map(A, B, Mat2q::identity());
  CHECK(t[0] == GQ(2));
  CHECK(t[1] == A.trace());
  CHECK(t[2] == B.trace());
  CHECK(t[3] == (A * B).trace());

  // M = 0 -> (0,0,0,0) and back.
  auto tz = theta_map(A, B, Mat2q::zero());
  for (const auto& v : tz) CHECK(v.is_zero());
  CHECK(theta_inverse(A, B, tz) == Mat2q::zero());
  CHECK(theta_inverse(A, B, t) == Mat2q::identity());

  // Round trip through a random M (4x4 linear solve oracle).
  std::mt19937_64 rng(23);
  for (int k = 0; k < 25; ++k) {
    Mat2q M(test::rand_gq(rng), test::rand_gq(rng), test::rand_gq(rng),
            test::rand_gq(rng), false);
    CHECK(theta_inverse(A, B, theta_map(A, B, M)) == M);
  }

  // Determinant of the 4x4 matrix is nonzero over random irreducible pairs.
  int checked = 0;
  while (checked < 50) {
    Mat2q X = test::rand_sl2q(rng), Y = test::rand_sl2q(rng);
    if (mat_commutator(X, Y).trace() == GQ(2)) continue;
    auto m = theta_matrix(X, Y);
    // Row-reduce and confirm full rank (determinant nonzero).
    DenseMatrix<GQ> copy = m;
    CHECK(row_reduce(copy, static_cast<DenseMatrix<GQ>*>(nullptr), 0.0) == 4);
    ++checked;
  }

  // Singular configuration: triangular pair has tr[A,B] = 2.
  Mat2q U1(gq(2), gq(3), gq(0), gq(1, 2), true);
  Mat2q U2(gq(5), gq(-2), gq(0), gq(1, 5), true);
  CHECK_THROWS_AS(theta_map(U1, U2, Mat2q::identity()), DomainError);
}

TEST_CASE("kernel witness") {
  FreeWord w = kernel_witness();
  CHECK(!w.empty());
  CHECK(w.length() > 0);
  CHECK(w.max_generator_index() == 1);

  // Dies on any upper-triangular pair, exactly.
  Presentation f2 = Presentation::free_group(2);
  Mat2q A(gq(1), gq(1), gq(0), gq(1), true);
  Mat2q B(gq(2), gq(1), gq(0), gq(1, 2), true);
  Representation<GQ> rho(f2, {A, B});
  CHECK(rho.evaluate(w).is_identity());

  // And on conjugates (100 in the suite; a couple here).
  std::mt19937_64 rng(29);
  for (int k = 0; k < 10; ++k) {
    Mat2q G = test::rand_sl2q(rng);
    Representation<GQ> conj(
        f2, {A.conjugated_by(G).as_sl2(), B.conjugated_by(G).as_sl2()});
    CHECK(conj.evaluate(w).is_identity());
  }

  // But not on an irreducible pair.
  Mat2q X(gq(2), gq(0), gq(0), gq(1, 2), true);
  Mat2q Y(gq(1), gq(1), gq(1), gq(2), true);
  Representation<GQ> irr(f2, {X, Y});
  CHECK(!irr.evaluate(w).is_identity());
}
