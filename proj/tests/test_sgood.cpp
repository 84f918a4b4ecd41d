#include <doctest.h>

#include "repvar/sgood.hpp"
#include "support.hpp"

using namespace repvar;
using test::gq;
using GQ = GaussianRational;

TEST_CASE("sgood trace of commutator") {
  // Matrix oracle value at (0, 2, 0): the commutator is diag(1/4, 4), so the
  // trace is 17/4.
  CHECK(sgood_trace_of_commutator(gq(0), gq(2), gq(0)) == gq(17, 4));
  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    GQ a = test::rand_gq(rng), b = test::rand_gq(rng), c = test::rand_gq(rng);
    if (b.is_zero()) continue;
    Mat2q A(a, gq(1), gq(-1), gq(0), true);
    Mat2q B(b, gq(0), c, b.inverse(), true);
    CHECK(sgood_trace_of_commutator(a, b, c) ==
          mat_commutator(A, B).trace());
  }
  CHECK_THROWS_AS(sgood_trace_of_commutator(gq(1), gq(0), gq(1)),
                  DomainError);
  // b = +-1, c = 0 is the excluded trace-2 locus.
  CHECK(sgood_trace_of_commutator(gq(5), gq(1), gq(0)) == GQ(2));
}

TEST_CASE("character cover f") {
  auto f = character_cover_f(gq(0), gq(2), gq(0));
  CHECK(f[0] == GQ(0));
  CHECK(f[1] == gq(5, 2));
  CHECK(f[2] == GQ(0));
  CHECK_THROWS_AS(character_cover_f(gq(0), gq(1), gq(0)), DomainError);

  // Sheet relation: f(a, b, c) = f(a, 1/b, c') with c' = ab + c - a/b.
  std::mt19937_64 rng(37);
  for (int k = 0; k < 50; ++k) {
    GQ a = test::rand_gq(rng), b = test::rand_gq(rng), c = test::rand_gq(rng);
    if (b.is_zero() || b == GQ(1) || b == GQ(-1)) continue;
    GQ cp = a * b + c - a / b;
    auto f1 = character_cover_f(a, b, c);
    auto f2 = character_cover_f(a, b.inverse(), cp);
    CHECK(f1[0] == f2[0]);
    CHECK(f1[1] == f2[1]);
    CHECK(f1[2] == f2[2]);
  }
}

TEST_CASE("relator map g and jacobian certificates") {
  Mat2q g0 = relator_map_g(gq(0), gq(2), gq(0));
  CHECK(g0.at(0, 0) == gq(1, 4));
  CHECK(g0.at(0, 1).is_zero());
  CHECK(g0.at(1, 0).is_zero());
  CHECK(g0.at(1, 1) == GQ(4));

  std::mt19937_64 rng(41);
  for (int k = 0; k < 100; ++k) {
    GQ a = test::rand_gq(rng), b = test::rand_gq(rng), c = test::rand_gq(rng);
    if (b.is_zero() || b == GQ(1) || b == GQ(-1)) continue;
    Mat2q A(a, gq(1), gq(-1), gq(0), true);
    Mat2q B(b, gq(0), c, b.inverse(), true);
    Mat2q g = relator_map_g(a, b, c);
    CHECK(g == mat_commutator(A, B).as_sl2());
    CHECK(g.at(1, 1) == b * b);  // r4 = b^2 always
    auto [first, second] = g_jacobian_certificates(a, b, c);
    CHECK(first == GQ(2) * b * b * (GQ(1) / (b * b) - GQ(1)) * g.at(0, 0));
    CHECK(second == GQ(-2) * (GQ(1) - b * b) * g.at(0, 1));
  }

  // First patch determinant at (0, 2, 0): 2 (1/4 - 1) (1) = -3/2.
  auto [first, second] = g_jacobian_certificates(gq(0), gq(2), gq(0));
  CHECK(first == gq(-3, 2));
  (void)second;
}

TEST_CASE("lift_character round trip and sheets") {
  std::mt19937_64 rng(43);
  SGoodCoords<GQ> coords(gq(1, 2, 1, 1), gq(3), gq(-2, 3));
  coords.tail.push_back(test::rand_sl2q(rng));
  auto rep = coords.to_representation();
  auto words = sgood_character_words(3);
  Character<GQ> x = character_of(rep, words);

  // |b| = 3 >= 1: sheet 1 recovers the original coordinates exactly.
  SGoodCoords<GQ> s1 = lift_character(x, 1);
  CHECK(s1.a == coords.a);
  CHECK(s1.b == coords.b);
  CHECK(s1.c == coords.c);
  REQUIRE(s1.tail.size() == 1);
  CHECK(s1.tail[0] == coords.tail[0]);

  SGoodCoords<GQ> s2 = lift_character(x, 2);
  CHECK(s2.b == coords.b.inverse());
  Character<GQ> x2 = character_of(s2.to_representation(), words);
  CHECK(x2.traces == x.traces);  // equal characters, different sheets

  // Excluded locus: x(beta) = 2.
  Character<GQ> bad = x;
  bad.traces[1] = GQ(2);
  CHECK_THROWS_AS(lift_character(bad, 1), DomainError);
}

TEST_CASE("to_sgood") {
  // Already sgood input: identity conjugator and basis.
  SGoodCoords<GQ> coords(gq(1), gq(2), gq(3, 2));
  auto rep = coords.to_representation();
  auto res = to_sgood(rep);
  CHECK(res.coords.a == coords.a);
  CHECK(res.coords.b == coords.b);
  CHECK(res.coords.c == coords.c);
  CHECK(res.new_basis[0] == FreeWord::generator(0));
  CHECK(res.new_basis[1] == FreeWord::generator(1));
  CHECK(res.conjugator.is_identity());

  // Random conjugate: recovers (a, b, c) or the 1/b sheet.
  std::mt19937_64 rng(47);
  Mat2q G = test::rand_sl2q(rng);
  auto res2 = to_sgood(rep.conjugated_by(G));
  bool sheet1 = res2.coords.b == coords.b;
  bool sheet2 = res2.coords.b == coords.b.inverse();
  CHECK((sheet1 || sheet2));

  // Parabolic beta image: the basis change must kick in.
  // A fixes {0, inf}; P is parabolic with fixed point -1, trace 2.
  Mat2q A(gq(2), gq(0), gq(0), gq(1, 2), true);
  Mat2q P(gq(2), gq(1), gq(-1), gq(0), true);
  REQUIRE(P.trace() == GQ(2));
  REQUIRE(mat_commutator(A, P).trace() != GQ(2));
  Representation<GQ> rho(Presentation::free_group(2), {A, P});
  auto res3 = to_sgood(rho);
  // The returned coordinates satisfy the sgood constraints by construction;
  // beta's word is no longer the bare generator.
  CHECK(res3.new_basis[1] != FreeWord::generator(1));
  CHECK(res3.coords.b != GQ(1));

  // Reducible input errors out.
  Mat2q U1(gq(2), gq(3), gq(0), gq(1, 2), true);
  Mat2q U2(gq(5), gq(-2), gq(0), gq(1, 5), true);
  Representation<GQ> red(Presentation::free_group(2), {U1, U2});
  CHECK_THROWS_AS(to_sgood(red), CommonFixedPointError);
}
