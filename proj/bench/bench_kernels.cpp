#include <benchmark/benchmark.h>

#include <random>

#include "dynclass/bool_matrix.hpp"
#include "dynclass/interval.hpp"
#include "dynclass/lang.hpp"

using namespace dynclass;

namespace {

Exec policy(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

BoolMatrix random_matrix(std::size_t n, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution bit(0.05);
  BoolMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (bit(rng)) m.set(i, j);
    }
  }
  return m;
}

void BM_Multiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_matrix(n, 1), b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b, policy(state)));
}
BENCHMARK(BM_Multiply)->ArgsProduct({{256, 1024}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_GapShiftMixing(benchmark::State& state) {
  GapShiftOracle gap(3);
  const WitnessScale s{2, static_cast<std::uint32_t>(state.range(0)), 32, 8};
  for (auto _ : state) benchmark::DoNotOptimize(witness_check(gap, PropertyId::TM, s, policy(state)));
}
BENCHMARK(BM_GapShiftMixing)->ArgsProduct({{16, 24}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_TentGrid(benchmark::State& state) {
  auto tent = PLMap::finite({0, Rational(1, 2), 1}, {0, 1, 0});
  const Rational eps(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_interval_property(tent, PropertyId::LEO, eps, 40, policy(state)));
}
BENCHMARK(BM_TentGrid)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
