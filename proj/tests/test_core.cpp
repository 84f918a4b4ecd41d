#include <doctest.h>

#include "repvar/moebius.hpp"
#include "repvar/representation.hpp"
#include "support.hpp"

using namespace repvar;
using test::gq;

TEST_CASE("gaussian rational arithmetic and exact sqrt") {
  GaussianRational z = gq(3, 4, 1, 2);  // 3/4 + i/2
  CHECK(z + z == gq(3, 2, 1, 1));
  CHECK(z * z.inverse() == GaussianRational(1));
  CHECK((z / z) == GaussianRational(1));
  CHECK(z.conj().im() == -z.im());

  // sqrt of a perfect square in Q(i): (2+3i)^2 = -5 + 12i.
  GaussianRational w = gq(2, 1, 3, 1);
  auto r = gaussian_sqrt(w * w);
  REQUIRE(r.has_value());
  CHECK((*r == w || *r == -w));
  CHECK(!gaussian_sqrt(GaussianRational(2)).has_value());
  CHECK(*gaussian_sqrt(GaussianRational(mpq_class(9, 4))) ==
        gq(3, 2));
  // sqrt(-9/4) = (3/2) i.
  CHECK(*gaussian_sqrt(GaussianRational(mpq_class(-9, 4))) == gq(0, 1, 3, 2));
}

TEST_CASE("rational parsing round trip") {
  CHECK(parse_rational("3/4") == mpq_class(3, 4));
  CHECK(parse_rational("-7") == mpq_class(-7));
  CHECK(parse_rational("0.125") == mpq_class(1, 8));
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
}

TEST_CASE("mat_commutator examples") {
  using GQ = GaussianRational;
  // A = I, B arbitrary -> I.
  Mat2q B(gq(1), gq(1), gq(1), gq(2), true);
  CHECK(mat_commutator(Mat2q::identity(), B).is_identity());

  // A = diag(2, 1/2), B = [[1,1],[1,2]] -> trace -1/4 (oracle cross-check).
  Mat2q A(gq(2), gq(0), gq(0), gq(1, 2), true);
  Mat2q comm = mat_commutator(A, B);
  CHECK(comm.trace() == gq(-1, 4));
  CHECK(test::commutator_oracle(A, B).trace() == gq(-1, 4));
  CHECK(comm.det() == GQ(1));
  CHECK(comm.sl2_flag());

  // Simultaneously upper triangular -> trace exactly 2.
  Mat2q U1(gq(2), gq(5), gq(0), gq(1, 2), true);
  Mat2q U2(gq(3), gq(-1), gq(0), gq(1, 3), true);
  CHECK(mat_commutator(U1, U2).trace() == GQ(2));
}

TEST_CASE("evaluate_word") {
  std::mt19937_64 rng(7);
  Presentation f2 = Presentation::free_group(2);
  Representation<GaussianRational> rho(
      f2, {test::rand_sl2q(rng), test::rand_sl2q(rng)});

  CHECK(rho.evaluate(FreeWord()).is_identity());

  FreeWord comm_word = word_commutator(FreeWord::generator(0),
                                       FreeWord::generator(1));
  CHECK(rho.evaluate(comm_word) ==
        mat_commutator(rho.image(0), rho.image(1)));

  FreeWord bad = FreeWord::generator(5);
  CHECK_THROWS_AS(rho.evaluate(bad), DomainError);
}

TEST_CASE("surface representation validates the relator") {
  // Upper-triangular pair on handle 1, inverse pair on handle 2.
  std::mt19937_64 rng(11);
  Mat2q A = test::rand_sl2q(rng), B = test::rand_sl2q(rng);
  Presentation s2 = Presentation::surface(2);
  // [A,B][B,A] = I since [B,A] = [A,B]^-1 after swapping the pair.
  Representation<GaussianRational> rho(s2, {A, B, B, A});
  CHECK(rho.relator_residual() == 0);
  CHECK(rho.evaluate(s2.relator()).is_identity());

  CHECK_THROWS_AS(Representation<GaussianRational>(
                      s2, {A, B, A, B}),
                  DomainError);
}

TEST_CASE("free word reduction") {
  FreeWord a = FreeWord::generator(0), b = FreeWord::generator(1);
  FreeWord w = a * b * b.inverse() * a.inverse();
  CHECK(w.empty());
  FreeWord v = a * a * a.inverse();
  CHECK(v == a);
  CHECK((a * b).inverse() == b.inverse() * a.inverse());
  CHECK(a.conjugated_by(b) == b.inverse() * a * b);
  CHECK(word_commutator(a, b).length() == 4);
  // substitution homomorphism
  FreeWord img = word_commutator(a, b).substitute({a * b, b});
  CHECK(img == word_commutator(a * b, b));
}

TEST_CASE("fixed points") {
  using GQ = GaussianRational;
  // diag(2, 1/2) fixes 0 and infinity.
  Mat2q D(gq(2), gq(0), gq(0), gq(1, 2), true);
  auto fp = fixed_points(D);
  CHECK(fp.count == FixedPointCount::two);
  REQUIRE(fp.points.size() == 2);
  bool has_zero = false, has_inf = false;
  for (const auto& p : fp.points) {
    if (p.is_infinity()) has_inf = true;
    else if (p.value().is_zero()) has_zero = true;
  }
  CHECK(has_zero);
  CHECK(has_inf);

  // [[1,1],[0,1]] fixes only infinity.
  Mat2q P(gq(1), gq(1), gq(0), gq(1), true);
  auto fpp = fixed_points(P);
  CHECK(fpp.count == FixedPointCount::one);
  REQUIRE(fpp.points.size() == 1);
  CHECK(fpp.points.front().is_infinity());

  // +-I: all points fixed.
  CHECK(fixed_points(Mat2q::identity()).count == FixedPointCount::all);
  CHECK(fixed_points(-Mat2q::identity()).count == FixedPointCount::all);

  // [[2,1],[1,1]]: golden-ratio fixed points (quadratic formula oracle).
  Mat2c G(Complex(2), Complex(1), Complex(1), Complex(1), true);
  auto fpg = fixed_points(G);
  REQUIRE(fpg.points.size() == 2);
  double phi = (1 + std::sqrt(5.0)) / 2;
  double psi = (1 - std::sqrt(5.0)) / 2;
  std::vector<double> got;
  for (const auto& p : fpg.points) got.push_back(p.value().real());
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(psi).epsilon(1e-12));
  CHECK(got[1] == doctest::Approx(phi).epsilon(1e-12));
  // Each point satisfies the fixed-point quadratic.
  for (const auto& p : fpg.points)
    CHECK(moebius_apply(G, p).same_point_as(p, 1e-12));

  // Exact backend refuses irrational fixed points.
  Mat2q Gq(gq(2), gq(1), gq(1), gq(1), true);
  CHECK_THROWS_AS(fixed_points(Gq), NumericError);
}

TEST_CASE("character_of basics") {
  std::mt19937_64 rng(13);
  Presentation f2 = Presentation::free_group(2);
  Representation<GaussianRational> rho(
      f2, {test::rand_sl2q(rng), test::rand_sl2q(rng)});

  auto x = character_of(rho, {FreeWord()});
  CHECK(x.traces[0] == GaussianRational(2));

  // Conjugation invariance on a handful of words.
  std::vector<FreeWord> words = {
      FreeWord::generator(0), FreeWord::generator(1),
      FreeWord::generator(0) * FreeWord::generator(1),
      word_commutator(FreeWord::generator(0), FreeWord::generator(1))};
  Mat2q G = test::rand_sl2q(rng);
  auto x1 = character_of(rho, words);
  auto x2 = character_of(rho.conjugated_by(G), words);
  CHECK(x1.traces == x2.traces);
}

TEST_CASE("presentation shapes") {
  Presentation s3 = Presentation::surface(3);
  CHECK(s3.num_generators() == 6);
  CHECK(s3.relator().length() == 12);  // 4g
  CHECK(s3.generator_name(0) == "a1");
  CHECK(s3.generator_name(5) == "b3");
  CHECK_THROWS_AS(Presentation::surface(1), DomainError);

  Presentation f3 = Presentation::free_group(3);
  CHECK(f3.generator_name(0) == "a");
  CHECK(f3.generator_name(1) == "b");
  CHECK(f3.generator_name(2) == "g3");
  CHECK_THROWS_AS(f3.relator(), DomainError);
}
