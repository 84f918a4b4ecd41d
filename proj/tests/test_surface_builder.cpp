#include <doctest.h>

#include <set>

#include "repvar/fibers.hpp"
#include "repvar/surface_builder.hpp"
#include "support.hpp"

using namespace repvar;
using test::gq;
using GQ = GaussianRational;

TEST_CASE("standard curves") {
  auto sc = standard_curves(4);
  Presentation p = Presentation::surface(4);
  CHECK(sc.C == word_commutator(FreeWord::generator(p.alpha(1)),
                                FreeWord::generator(p.beta(1))));
  CHECK(sc.C_prime == word_commutator(FreeWord::generator(p.alpha(4)),
                                      FreeWord::generator(p.beta(4))));
  CHECK(sc.C_double_prime.length() == 8);
  CHECK(sc.C_double_prime == sc.C * sc.comm_a2b2);
  CHECK_THROWS_AS(standard_curves(2), DomainError);
}

TEST_CASE("build_representation constructs certified candidates") {
  RepresentationQ rho = build_representation(4, 1);
  CHECK(rho.relator_residual() == 0);
  auto sc = standard_curves(4);
  Mat2q C = rho.evaluate(sc.C);
  CHECK(C.trace() == GQ(2));
  CHECK(!C.is_identity());

  // Different seeds give different characters: x(a2) differs.
  RepresentationQ rho2 = build_representation(4, 2);
  Presentation p = Presentation::surface(4);
  CHECK(rho.image(p.alpha(2)).trace() != rho2.image(p.alpha(2)).trace());

  CHECK_THROWS_AS(build_representation(3, 1), DomainError);
}

TEST_CASE("scc catalog") {
  auto depth0 = scc_default_catalog(4, 0);
  // Includes the 8 generators and the 4 single-handle boundary words.
  int gens = 0, singles = 0;
  Presentation p = Presentation::surface(4);
  for (const auto& w : depth0) {
    if (w.length() == 1) ++gens;
    for (int i = 1; i <= 4; ++i)
      if (w == word_commutator(FreeWord::generator(p.alpha(i)),
                               FreeWord::generator(p.beta(i))))
        ++singles;
  }
  CHECK(gens == 8);
  CHECK(singles == 4);

  auto depth2 = scc_default_catalog(4, 2);
  CHECK(depth2.size() >= 50);
  std::set<FreeWord> dedup(depth2.begin(), depth2.end());
  CHECK(dedup.size() == depth2.size());
  for (const auto& w : depth2) CHECK(!w.empty());
  // The full relator must not appear (it is null-homotopic).
  bool has_relator = false;
  for (const auto& w : depth2)
    if (w == p.relator()) has_relator = true;
  CHECK(!has_relator);
  // C = [a1,b1] is in the catalog.
  auto sc = standard_curves(4);
  CHECK(dedup.count(sc.C) == 1);
}

TEST_CASE("certify") {
  RepresentationQ rho = build_representation(4, 3);
  auto catalog = scc_default_catalog(4, 1);
  Certificate cert = certify(rho, catalog, 100, 8, 3);
  CHECK(cert.pass);
  CHECK(cert.w.all_satisfied());
  CHECK(cert.relator_residual == 0);
  CHECK(cert.witness_residual == 0);
  CHECK(!cert.kernel_witness_word.empty());
  for (const auto& chk : cert.scc_checks) CHECK(!chk.killed);
  // C has trace 2 and is a nontrivial parabolic under this representation.
  auto sc = standard_curves(4);
  Mat2q C = rho.evaluate(sc.C);
  CHECK(C.trace() == GQ(2));
  CHECK(!C.is_central());
  // Nonabelian yet reducible restriction to the first handle (the trace-2
  // configuration).
  Presentation p = Presentation::surface(4);
  auto rr = reducibility_report(rho.image(p.alpha(1)), rho.image(p.beta(1)));
  CHECK(rr.reducible);
  CHECK(!mat_commutator(rho.image(p.alpha(1)), rho.image(p.beta(1)))
             .is_identity());

  // A Fuchsian-like representation (tr rho(C) != 2) fails W-1; pad to genus 3
  // with an identity handle so certify accepts the presentation.
  Mat2q A1(gq(2), gq(0), gq(0), gq(1, 2), true);
  Mat2q B1(gq(1), gq(1), gq(1), gq(2), true);
  Mat2q M = mat_commutator(A1, B1).inverse().as_sl2();
  auto fp = solve_commutator(M);
  Presentation s3 = Presentation::surface(3);
  Representation<GQ> padded(
      s3, {A1, B1, fp.A, fp.B, Mat2q::identity(), Mat2q::identity()});
  Certificate fail_cert = certify(padded, scc_default_catalog(3, 0), 10, 4, 1);
  CHECK(!fail_cert.pass);
  CHECK(!fail_cert.w.w1.satisfied);

  // A representation with rho(a3) = I fails the scc check on that word.
  bool killed_seen = false;
  for (const auto& chk : fail_cert.scc_checks)
    if (chk.killed) killed_seen = true;
  CHECK(killed_seen);
}

TEST_CASE("dimension calculator") {
  CHECK(dimension_calculator(3, DimensionQuery::whole) == 12);
  CHECK(dimension_calculator(3, DimensionQuery::kill_separating, 1) == 10);
  CHECK(dimension_calculator(4, DimensionQuery::z_locus) == 17);
  CHECK(dimension_calculator(3, DimensionQuery::kill_nonseparating) == 9);
  CHECK(dimension_calculator(4, DimensionQuery::kill_separating, 2) == 15);
  CHECK_THROWS_AS(dimension_calculator(2, DimensionQuery::kill_nonseparating),
                  DomainError);
  CHECK_THROWS_AS(dimension_calculator(4, DimensionQuery::kill_separating, 4),
                  DomainError);
  for (int g = 2; g <= 6; ++g) {
    CHECK(dimension_calculator(g, DimensionQuery::whole) ==
          dimension_by_product_formula(g, DimensionQuery::whole));
    CHECK(dimension_calculator(g, DimensionQuery::z_locus) ==
          dimension_by_product_formula(g, DimensionQuery::z_locus));
  }
}

TEST_CASE("kernel witness independence across seeds") {
  // The witness word is representation-independent and dies on every
  // representation with tr rho(C) = 2.
  FreeWord w = kernel_witness();
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    RepresentationQ rho = build_representation(4, seed);
    CHECK(rho.evaluate(w).is_identity());
  }
}
