#include <benchmark/benchmark.h>

#include <vector>

#include "rfspectra/experiments.hpp"
#include "rfspectra/features.hpp"
#include "rfspectra/jacobi.hpp"
#include "rfspectra/kernels.hpp"
#include "rfspectra/rng.hpp"
#include "rfspectra/sampling.hpp"
#include "rfspectra/spectra.hpp"

namespace {

using namespace rfspectra;

std::vector<double> random_symmetric(std::size_t n, std::uint64_t seed) {
  Xoshiro256 rng(seed);
  std::vector<double> a(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j; k < n; ++k) {
      const double v = 2.0 * rng.uniform01() - 1.0;
      a[j * n + k] = v;
      a[k * n + j] = v;
    }
  }
  return a;
}

void BM_JacobiEigen(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto matrix = random_symmetric(n, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_eigen(matrix, n));
  }
}
BENCHMARK(BM_JacobiEigen)->Arg(50)->Arg(100)->Arg(200)->Unit(
    benchmark::kMillisecond);

void BM_BuildFeatureMatrix(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto data = sample_cloud(
      DistributionSpec::data_cloud(Family::gaussian, 1.0, d), 100, 1);
  const auto weights = sample_cloud(
      DistributionSpec::weight_cloud(Family::gaussian, 3.0, d), 5000, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_feature_matrix(data, weights));
  }
}
BENCHMARK(BM_BuildFeatureMatrix)->Arg(4)->Arg(10)->Arg(20)->Unit(
    benchmark::kMillisecond);

void BM_GramOverData(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto data = sample_cloud(
      DistributionSpec::data_cloud(Family::gaussian, 1.0, 10), 100, 3);
  const auto weights = sample_cloud(
      DistributionSpec::weight_cloud(Family::gaussian, 3.0, 10), n, 4);
  const auto a = build_feature_matrix(data, weights);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram_over_data(a));
  }
}
BENCHMARK(BM_GramOverData)->Arg(500)->Arg(5000)->Unit(
    benchmark::kMillisecond);

void BM_ExpectedGramOverData(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto weights = sample_cloud(
      DistributionSpec::weight_cloud(Family::gaussian, 3.0, 10), n, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_gram_over_data(weights, 1.0));
  }
}
BENCHMARK(BM_ExpectedGramOverData)->Arg(100)->Arg(400)->Unit(
    benchmark::kMillisecond);

void BM_Fig1Trial(benchmark::State& state) {
  auto config =
      ExperimentConfig::defaults_for(ExperimentKind::fig1_extreme_sv_vs_d);
  config.sigma_grid = {3.0};
  config.d_grid = {static_cast<std::int64_t>(state.range(0))};
  config.trials = 1;
  config.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_fig1(config));
  }
}
BENCHMARK(BM_Fig1Trial)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
