#include <benchmark/benchmark.h>

#include "devratio/bounds.hpp"
#include "devratio/equilibrium.hpp"
#include "devratio/generators.hpp"
#include "devratio/inducibility.hpp"
#include "devratio/random_instance.hpp"
#include "devratio/search.hpp"

using namespace devratio;

static void BM_WardropBraess(benchmark::State& state) {
  const GeneratedCase c = braess(static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(wardrop(c.instance, c.deviation, SolverConfig{}).relative_gap);
}
BENCHMARK(BM_WardropBraess)->Arg(3)->Arg(6)->Arg(10);

static void BM_WardropRandom(benchmark::State& state) {
  const Instance inst = random_common_source_instance(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wardrop(inst, Deviation(), SolverConfig{}).iterations);
}
BENCHMARK(BM_WardropRandom)->DenseRange(0, 3);

static void BM_IsInducible(benchmark::State& state) {
  const GeneratedCase c = braess(static_cast<std::size_t>(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(is_inducible(c.instance, c.x).inducible);
}
BENCHMARK(BM_IsInducible)->Arg(5)->Arg(20)->Arg(50);

static void BM_OracleInducible(benchmark::State& state) {
  const GeneratedCase c = braess(2, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_inducible(c.instance, c.x).inducible);
}
BENCHMARK(BM_OracleInducible);

static void BM_MuHatAffine(benchmark::State& state) {
  const SmoothnessQuery q{LatencyFn::polynomial({1.0, 2.0}), 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(mu_hat(q));
}
BENCHMARK(BM_MuHatAffine);

static void BM_WorstDeviation(benchmark::State& state) {
  const Instance inst = hamiltonian_reduction(directed_path(4), "0", "3");
  SearchOptions opts;
  opts.jobs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(worst_deviation(inst, opts, SolverConfig{}).cost);
}
BENCHMARK(BM_WorstDeviation);

static void BM_Fibonacci(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fibonacci(static_cast<std::size_t>(state.range(0)), 1.0).observed_ratio);
}
BENCHMARK(BM_Fibonacci)->Arg(3)->Arg(7);

BENCHMARK_MAIN();
