#include <doctest.h>

#include "repvar/lift.hpp"
#include "repvar/polypath.hpp"
#include "support.hpp"

using namespace repvar;

namespace {

MatrixPathC constant_target(const Mat2c& M, int n) {
  MatrixPathC path;
  for (int k = 0; k <= n; ++k)
    path.samples.push_back({double(k) / n, {M}});
  return path;
}

}  // namespace

TEST_CASE("path_avoiding_zeros basics") {
  MultiPoly p = MultiPoly::variable(1, 0);
  auto path = path_avoiding_zeros(p, {Complex(1, 0)}, {Complex(-1, 0)}, 32);
  double closest = 1e9;
  for (const auto& pt : path.points)
    closest = std::min(closest, std::abs(pt[0]));
  CHECK(closest > 0.01);
  CHECK(path.points.front()[0] == Complex(1, 0));
  CHECK(path.points.back()[0] == Complex(-1, 0));
  for (std::size_t i = 1; i < path.t.size(); ++i)
    CHECK(path.t[i] > path.t[i - 1]);

  CHECK_THROWS_AS(
      path_avoiding_zeros(p, {Complex(0, 0)}, {Complex(1, 0)}, 8),
      DomainError);
}

TEST_CASE("polynomial roots via companion matrix") {
  // (z - 1)(z - 2i) = z^2 - (1 + 2i) z + 2i.
  std::vector<Complex> coeffs = {Complex(0, 2), -Complex(1, 2), Complex(1, 0)};
  auto roots = polynomial_roots(coeffs);
  REQUIRE(roots.size() == 2);
  std::sort(roots.begin(), roots.end(),
            [](Complex a, Complex b) { return a.real() < b.real(); });
  CHECK(std::abs(roots[0] - Complex(0, 2)) < 1e-10);
  CHECK(std::abs(roots[1] - Complex(1, 0)) < 1e-10);
}

TEST_CASE("diagonalize_regular") {
  std::mt19937_64 rng(59);
  for (int k = 0; k < 20; ++k) {
    Mat2c G = test::rand_sl2c(rng);
    Complex m(2.5, 0.7);
    Mat2c D(m, Complex(0), Complex(0), Complex(1) / m, true);
    Mat2c M = D.conjugated_by(G).as_sl2(1e-9);
    auto diag = diagonalize_regular(M);
    CHECK(std::abs(diag.m - m) < 1e-9);
    Mat2c back =
        Mat2c(diag.m, Complex(0), Complex(0), Complex(1) / diag.m, true)
            .conjugated_by(diag.P);
    CHECK(to_double_real<Complex>(max_norm_distance(back, M)) < 1e-9);
    CHECK(std::abs(diag.P.det() - Complex(1)) < 1e-10);
  }
  Mat2c P(Complex(1), Complex(1), Complex(0), Complex(1), true);
  CHECK_THROWS_AS(diagonalize_regular(P), DomainError);
}

TEST_CASE("newton corrector converges") {
  std::mt19937_64 rng(61);
  Complex m(3, 0.5);
  Mat2c M(m, Complex(0), Complex(0), Complex(1) / m, true);
  auto base = fiber_base_point(m, std::sqrt(m));
  // Perturb slightly off the fiber, then correct back.
  Mat2c A(base.A.a() + Complex(1e-4, -2e-5), base.A.b(), base.A.c(),
          base.A.d(), true);
  Mat2c B = base.B;
  double res = commutator_newton_correct(A, B, M, 1e-13, 30);
  CHECK(res <= 1e-12);
  CHECK(std::abs(A.det() - Complex(1)) < 1e-10);
}

TEST_CASE("constant-path lift: trivial and sign-flip endpoints") {
  Complex m(4, 0);
  Mat2c M(m, Complex(0), Complex(0), Complex(1) / m, true);
  auto base = fiber_base_point(m, Complex(2, 0));
  auto targets = constant_target(M, 16);

  // start = end = base point: constant lift.
  LiftOptions opts;
  opts.steps = 32;
  opts.junction_samples = 24;
  auto lift = lift_path_fixed_endpoints(targets, base, base, opts);
  CHECK(lift.max_residual() <= 1e-9);
  CHECK(max_norm_distance(lift.samples.front().A, base.A) == 0);
  CHECK(max_norm_distance(lift.samples.back().A, base.A) == 0);
  CHECK(max_norm_distance(lift.samples.back().B, base.B) == 0);

  // end = (-A0, -B0): the lift must exist and end exactly there.
  FiberPointC flipped(-base.A, -base.B, M);
  auto lift2 = lift_path_fixed_endpoints(targets, base, flipped, opts);
  CHECK(lift2.max_residual() <= 1e-9);
  CHECK(max_norm_distance(lift2.samples.back().A, -base.A) == 0);
  CHECK(max_norm_distance(lift2.samples.back().B, -base.B) == 0);
}

TEST_CASE("moving-target lift with random constrained endpoints") {
  std::mt19937_64 rng(67);
  auto m_of = [](double t) { return Complex(4, 0) + t * Complex(2, 0); };
  MatrixPathC targets;
  for (int k = 0; k <= 32; ++k) {
    double t = k / 32.0;
    Complex m = m_of(t);
    targets.samples.push_back(
        {t, {Mat2c(m, Complex(0), Complex(0), Complex(1) / m, true)}});
  }
  auto start = fiber_base_point(m_of(0), std::sqrt(m_of(0)));
  // Random S1-family end point over m(1).
  Complex m1 = m_of(1);
  Complex a = test::rand_c(rng) + Complex(1.3, 0.1);
  Complex c = test::rand_c(rng) + Complex(1.2, -0.2);
  Complex b = (a * a * m1 - Complex(1)) / c;
  Complex s = test::rand_c(rng, 0.4);
  Complex qa = c * c * m1;
  Complex qb = -a * c * m1 * (m1 - Complex(1)) * s;
  Complex qc = -b * c * m1 * s * s - Complex(1);
  Complex tt = (-qb + std::sqrt(qb * qb - 4.0 * qa * qc)) / (2.0 * qa);
  Mat2c A(c * m1 * tt, b * m1 * s + a * m1 * (m1 - Complex(1)) * tt, c * s,
          c * tt, true);
  Mat2c B(a, b, c, a * m1, true);
  FiberPointC end(A, B, targets.samples.back().mats[0]);

  LiftOptions opts;
  opts.steps = 64;
  auto lift = lift_path_fixed_endpoints(targets, start, end, opts);
  CHECK(lift.max_residual() <= 1e-8);
  CHECK(max_norm_distance(lift.samples.front().A, start.A) == 0);
  CHECK(max_norm_distance(lift.samples.back().A, end.A) == 0);
  CHECK(max_norm_distance(lift.samples.back().B, end.B) == 0);
  // The parameter is strictly increasing from 0 to 1.
  CHECK(lift.samples.front().t == 0.0);
  CHECK(lift.samples.back().t == 1.0);
  for (std::size_t i = 1; i < lift.samples.size(); ++i)
    CHECK(lift.samples[i].t > lift.samples[i - 1].t);
}

TEST_CASE("lift rejects paths whose trace hits +-2") {
  Complex m(1.0001, 0);  // trace m + 1/m very close to 2
  Mat2c M(m, Complex(0), Complex(0), Complex(1) / m, true);
  auto targets = constant_target(M, 4);
  auto base = fiber_base_point(Complex(4, 0), Complex(2, 0));
  CHECK_THROWS_AS(lift_path_fixed_endpoints(targets, base, base, {}),
                  DomainError);
}
