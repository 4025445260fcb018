#include "tcrcalc/abelian.hpp"
#include "tcrcalc/fixtures.hpp"
#include "tcrcalc/ring_spec.hpp"
#include "tcrcalc/tcr.hpp"
#include "tcrcalc/witt.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace tcrcalc;

static void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(1);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() % 41) - 20;
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_WittMultiply(benchmark::State& state) {
  FinRing f4 = parse_ring("GF(2,x^2+x+1)").ring();
  WittRing w(f4, 2, static_cast<unsigned>(state.range(0)));
  std::mt19937 rng(2);
  std::vector<WittVector> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(w.decode(static_cast<Elem>(rng() % w.size())));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(w.mul(xs[i % 64], xs[(i + 1) % 64]));
    ++i;
  }
}
BENCHMARK(BM_WittMultiply)->DenseRange(2, 5);

static void BM_OracleTower(benchmark::State& state) {
  PerfectChar2 k = perfect_char2(parse_ring("GF(2,x^2+x+1)").ring());
  for (auto _ : state) benchmark::DoNotOptimize(oracle_tower(k, static_cast<unsigned>(state.range(0)), 6));
}
BENCHMARK(BM_OracleTower)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

static void BM_FixtureSuite(benchmark::State& state) {
  std::vector<Fixture> fs = default_fixtures();
  Budget b;
  for (auto _ : state)
    for (const Fixture& f : fs) benchmark::DoNotOptimize(run_fixture(f, b));
}
BENCHMARK(BM_FixtureSuite)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
