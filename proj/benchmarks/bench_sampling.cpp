#include <benchmark/benchmark.h>

#include "oslr/rng.hpp"
#include "oslr/sampling.hpp"

namespace {

void BM_SampleFeatureSet(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  oslr::Rng rng(1);
  Eigen::VectorXd w(d);
  for (int i = 0; i < d; ++i) w[i] = rng.uniform01();
  const oslr::SamplingWeights q = oslr::normalize_weights(w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oslr::sample_feature_set(q, k, rng));
  }
}
BENCHMARK(BM_SampleFeatureSet)->Args({20, 4})->Args({100, 10})->Args({500, 20});

void BM_EnumerateDistribution(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  oslr::Rng rng(2);
  Eigen::VectorXd w(d);
  for (int i = 0; i < d; ++i) w[i] = rng.uniform01();
  const oslr::SamplingWeights q = oslr::normalize_weights(w);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oslr::enumerate_distribution(q, d - 2));
  }
}
BENCHMARK(BM_EnumerateDistribution)->Arg(6)->Arg(7)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
