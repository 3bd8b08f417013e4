#include <benchmark/benchmark.h>

#include <random>

#include "framepot/exact.hpp"
#include "framepot/lattice.hpp"
#include "framepot/sampling.hpp"
#include "framepot/survey.hpp"

using namespace framepot;

static void BM_LatticeVolume(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CircuitArchitecture a = all_rotations_up_to(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(lattice_volume_pauli(a).V.get_ui());
  state.SetLabel("all rotations, N = " + std::to_string(a.N()));
}
BENCHMARK(BM_LatticeVolume)->DenseRange(2, 6);

static void BM_ExactSeries(benchmark::State& state) {
  const int t_max = static_cast<int>(state.range(0));
  Spectrum sp = build_spectrum_pauli(architecture_from_columns(2, {1, 2, 3}));
  for (auto _ : state) {
    DyadicSeries s = frame_potential_exact(sp, t_max);
    benchmark::DoNotOptimize(s.values.back().exp2);
  }
  state.SetComplexityN(t_max);
}
BENCHMARK(BM_ExactSeries)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void BM_ConvolvePower(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  Spectrum sp = build_spectrum_pauli(
      architecture_from_rotations(4, {{1}, {2, 3, 4}, {1, 2, 3}, {2, 3}, {1, 4}}));
  for (auto _ : state) {
    SparseDistribution d = convolve_power(sp, t);
    benchmark::DoNotOptimize(d.support.size());
  }
}
BENCHMARK(BM_ConvolvePower)->DenseRange(2, 10, 2);

static void BM_ImportanceSampling(benchmark::State& state) {
  const uint64_t M = static_cast<uint64_t>(state.range(0));
  DifferenceDistribution d = difference_distribution(build_spectrum_pauli(
      architecture_from_rotations(4, {{1}, {2, 3, 4}, {1, 2, 3}, {2, 3}, {1, 4}})));
  uint64_t seed = 1;
  for (auto _ : state) {
    EstimateReport r = importance_sampling_fp(d, 8, M, seed++, IsMode::unbiased);
    benchmark::DoNotOptimize(r.estimate);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(M));
}
BENCHMARK(BM_ImportanceSampling)->Arg(1000)->Arg(10000);

static void BM_MultinomialEstimator(benchmark::State& state) {
  const uint64_t M = static_cast<uint64_t>(state.range(0));
  uint64_t seed = 1;
  for (auto _ : state) {
    EstimateReport r = multinomial_fp(4, 16, M, seed++);
    benchmark::DoNotOptimize(r.estimate);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(M));
}
BENCHMARK(BM_MultinomialEstimator)->Arg(1000)->Arg(10000);

static void BM_CensusExhaustive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    VolumeTally t = census_exhaustive(n);
    benchmark::DoNotOptimize(t.total);
  }
}
BENCHMARK(BM_CensusExhaustive)->DenseRange(2, 4);

BENCHMARK_MAIN();
