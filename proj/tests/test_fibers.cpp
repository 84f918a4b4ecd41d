#include <doctest.h>

#include "repvar/fibers.hpp"
#include "support.hpp"

using namespace repvar;
using test::gq;
using GQ = GaussianRational;

TEST_CASE("fiber base point") {
  // m = 4, sqrt_m = 2: A0 = [[2,3],[0,1/2]], B0 = [[1/2,0],[1,2]].
  auto fp = fiber_base_point(gq(4), gq(2));
  CHECK(fp.A == Mat2q(gq(2), gq(3), gq(0), gq(1, 2), true));
  CHECK(fp.B == Mat2q(gq(1, 2), gq(0), gq(1), gq(2), true));
  CHECK(fp.target == Mat2q(gq(4), gq(0), gq(0), gq(1, 4), true));
  CHECK(fp.residual == 0);
  CHECK(test::commutator_oracle(fp.A, fp.B)
            .entrywise_close(fp.target, 0));

  CHECK_THROWS_AS(fiber_base_point(gq(-1), GQ::i()), DomainError);
  CHECK_THROWS_AS(fiber_base_point(gq(4), gq(3)), DomainError);  // bad sqrt

  // Rational m with rational sqrt: residual exactly 0.
  auto fp2 = fiber_base_point(gq(9, 4), gq(3, 2));
  CHECK(fp2.residual == 0);
}

TEST_CASE("fiber families") {
  // Parameters reproducing the base point for m = 4:
  // S1 coords (a,b,c,s,t) = (1/2, 0, 1, 0, 1/2).
  auto fp = fiber_family_c(gq(4), gq(1, 2), gq(0), gq(1), gq(0), gq(1, 2));
  auto base = fiber_base_point(gq(4), gq(2));
  CHECK(fp.A == base.A);
  CHECK(fp.B == base.B);
  CHECK(fp.residual == 0);

  // S2 coords for the base point: (1/2, 0, 1, 2, 0).
  auto fp2 = fiber_family_a(gq(4), gq(1, 2), gq(0), gq(1), gq(2), gq(0));
  CHECK(fp2.A == base.A);
  CHECK(fp2.B == base.B);

  // c = 0 rejected in S1; a = 0 rejected in S2.
  CHECK_THROWS_AS(fiber_family_c(gq(4), gq(1, 2), gq(0), gq(0), gq(0), gq(1, 2)),
                  DomainError);
  CHECK_THROWS_AS(fiber_family_a(gq(4), gq(0), gq(1), gq(-1), gq(1), gq(1)),
                  DomainError);
  // Violated determinant constraints are reported.
  CHECK_THROWS_AS(fiber_family_c(gq(4), gq(1, 2), gq(0), gq(1), gq(1), gq(1)),
                  DomainError);
}

TEST_CASE("solve_commutator hits arbitrary targets exactly") {
  std::mt19937_64 rng(53);
  for (int k = 0; k < 50; ++k) {
    Mat2q M = test::rand_sl2q(rng);
    if (M.trace() == GQ(2) || M.trace() == GQ(-2)) continue;
    auto fp = solve_commutator(M);
    CHECK(fp.residual == 0);
    CHECK(mat_commutator(fp.A, fp.B) == M);
    CHECK(fp.B.trace() == (M * fp.B).trace());  // d = am condition
  }
  // Excluded traces.
  Mat2q P(gq(1), gq(1), gq(0), gq(1), true);
  CHECK_THROWS_AS(solve_commutator(P), DomainError);
}

TEST_CASE("sign flip paths") {
  Complex m(4, 0), sm(2, 0);
  Mat2c A0(sm, m - Complex(1), Complex(0), Complex(1) / sm, true);
  Mat2c B0(Complex(1) / sm, Complex(0), Complex(1), sm, true);

  // (+,+): constant path.
  auto same = sign_flip_path(m, sm, 1, 1, 8);
  for (const auto& s : same.samples) {
    CHECK(max_norm_distance(s.mats[0], A0) == 0);
    CHECK(max_norm_distance(s.mats[1], B0) == 0);
  }

  // (+,-) with m = 4: mid-sample (theta = pi/2) has B = [[i/2, 2i],[i, 2i]].
  auto flip = sign_flip_path(m, sm, 1, -1, 65);
  const auto& mid = flip.samples[32];  // theta = pi/2 at the midpoint
  CHECK(mid.t == doctest::Approx(0.5));
  Mat2c expected(Complex(0, 0.5), Complex(0, 2), Complex(0, 1), Complex(0, 2),
                 true);
  CHECK(to_double_real<Complex>(max_norm_distance(mid.mats[1], expected)) <
        1e-12);
  CHECK(max_norm_distance(flip.samples.back().mats[1], -B0) == 0);
  CHECK(max_norm_distance(flip.samples.back().mats[0], A0) == 0);

  // Every sample stays in the fiber.
  Mat2c target(m, Complex(0), Complex(0), Complex(1) / m, true);
  for (const auto& s : flip.samples)
    CHECK(to_double_real<Complex>(max_norm_distance(
              mat_commutator(s.mats[0], s.mats[1]), target)) <= 1e-9);

  CHECK_THROWS_AS(sign_flip_path(Complex(1, 0), Complex(1, 0), 1, -1, 8),
                  DomainError);
}

TEST_CASE("commutator jacobian rank") {
  // Commuting diagonal pair: rank < 3.
  Mat2c D1(Complex(2), Complex(0), Complex(0), Complex(0.5), true);
  Mat2c D2(Complex(3), Complex(0), Complex(0), Complex(1.0 / 3), true);
  CHECK(commutator_jacobian_rank(D1, D2) < 3);

  // Base point for m = 4: rank 3 (finite-difference oracle in the suite).
  Mat2c A0(Complex(2), Complex(3), Complex(0), Complex(0.5), true);
  Mat2c B0(Complex(0.5), Complex(0), Complex(1), Complex(2), true);
  CHECK(commutator_jacobian_rank(A0, B0) == 3);
}
