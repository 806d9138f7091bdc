#include <benchmark/benchmark.h>

#include "gaplab/holomorphy.hpp"
#include "gaplab/random_gen.hpp"

using namespace gaplab;

namespace {

void bm_gap(benchmark::State& state) {
  Rng rng(42);
  const Index n = state.range(0);
  Subspace x = random_subspace(rng, n, n / 2);
  Subspace y = random_subspace(rng, n, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(gap(x, y));
}
BENCHMARK(bm_gap)->Arg(10)->Arg(40);

void bm_oblique_projection(benchmark::State& state) {
  Rng rng(42);
  const Index n = state.range(0);
  auto [x, y] = random_complementary_pair(rng, n, n / 2);
  for (auto _ : state) benchmark::DoNotOptimize(oblique_projection(x, y));
}
BENCHMARK(bm_oblique_projection)->Arg(10)->Arg(40);

void bm_relative_characteristic(benchmark::State& state) {
  Rng rng(42);
  const Index n = state.range(0);
  GraphOperator t = GraphOperator::from_matrix(random_matrix(rng, n, n, 0.7));
  GraphOperator s = GraphOperator::from_matrix(random_matrix(rng, n, n, 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(relative_characteristic_matrix(t, s));
}
BENCHMARK(bm_relative_characteristic)->Arg(5)->Arg(20);

void bm_relchar_probe(benchmark::State& state) {
  Rng rng(42);
  RationalMatrixFamily r = random_rational_family(rng, 3, 3, 3);
  OperatorFamily family = OperatorFamily::from_rational(r);
  const Complex z0(0.25, -0.3);
  for (auto _ : state) benchmark::DoNotOptimize(relchar_differentiability(family, z0));
}
BENCHMARK(bm_relchar_probe);

void bm_spectrum_split(benchmark::State& state) {
  Rng rng(42);
  Matrix a = random_matrix(rng, 8, 6);
  Matrix b = random_matrix(rng, 6, 8);
  for (auto _ : state) benchmark::DoNotOptimize(check_spectrum_split(a, b));
}
BENCHMARK(bm_spectrum_split);

}  // namespace

BENCHMARK_MAIN();
