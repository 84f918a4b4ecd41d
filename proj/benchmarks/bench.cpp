#include <benchmark/benchmark.h>

#include <random>

#include "repvar/lift.hpp"
#include "repvar/surface_builder.hpp"

namespace {

using namespace repvar;
using GQ = GaussianRational;

Mat2q rand_sl2q(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 3);
  auto gq = [&] {
    return GQ(make_rational(num(rng), den(rng)),
              make_rational(num(rng), den(rng)));
  };
  for (;;) {
    GQ p = gq();
    if (p.is_zero()) continue;
    GQ q = gq(), r = gq();
    return Mat2q(p, q, r, (GQ(1) + q * r) / p, true);
  }
}

void BM_exact_word_evaluation(benchmark::State& state) {
  std::mt19937_64 rng(1);
  Presentation pres = Presentation::free_group(3);
  Representation<GQ> rho(pres,
                         {rand_sl2q(rng), rand_sl2q(rng), rand_sl2q(rng)});
  std::uniform_int_distribution<int> gen(0, 2), sgn(0, 1);
  std::vector<FreeWord::Syllable> syl;
  for (int i = 0; i < static_cast<int>(state.range(0)); ++i)
    syl.push_back({gen(rng), sgn(rng) ? 1 : -1});
  FreeWord w(std::move(syl));
  for (auto _ : state) benchmark::DoNotOptimize(rho.evaluate(w));
}
BENCHMARK(BM_exact_word_evaluation)->Arg(8)->Arg(16)->Arg(32);

void BM_theta_inverse_exact(benchmark::State& state) {
  std::mt19937_64 rng(2);
  Mat2q A = rand_sl2q(rng), B = rand_sl2q(rng);
  while (mat_commutator(A, B).trace() == GQ(2)) B = rand_sl2q(rng);
  Mat2q M = rand_sl2q(rng);
  auto t = theta_map(A, B, M);
  for (auto _ : state) benchmark::DoNotOptimize(theta_inverse(A, B, t));
}
BENCHMARK(BM_theta_inverse_exact);

void BM_newton_corrector(benchmark::State& state) {
  Complex m(3, 0.5);
  Mat2c M(m, Complex(0), Complex(0), Complex(1) / m, true);
  auto base = fiber_base_point(m, std::sqrt(m));
  for (auto _ : state) {
    Mat2c A(base.A.a() + Complex(1e-4, 0), base.A.b(), base.A.c(), base.A.d(),
            true);
    Mat2c B = base.B;
    benchmark::DoNotOptimize(commutator_newton_correct(A, B, M));
  }
}
BENCHMARK(BM_newton_corrector);

void BM_build_representation(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(build_representation(4, seed++));
}
BENCHMARK(BM_build_representation);

void BM_certify_small(benchmark::State& state) {
  RepresentationQ rho = build_representation(4, 42);
  auto catalog = scc_default_catalog(4, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(certify(rho, catalog, 50, 6, 42));
}
BENCHMARK(BM_certify_small);

void BM_solve_commutator_exact(benchmark::State& state) {
  std::mt19937_64 rng(3);
  Mat2q M = rand_sl2q(rng);
  while (M.trace() == GQ(2) || M.trace() == GQ(-2)) M = rand_sl2q(rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_commutator(M));
}
BENCHMARK(BM_solve_commutator_exact);

}  // namespace

BENCHMARK_MAIN();
