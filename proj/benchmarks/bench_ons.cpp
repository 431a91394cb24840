#include <benchmark/benchmark.h>

#include "oslr/ons.hpp"
#include "oslr/rng.hpp"

namespace {

void BM_OnsStep(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  oslr::Rng rng(5);
  std::vector<int> support(k);
  for (int i = 0; i < k; ++i) support[i] = i;
  oslr::OnsEpoch epoch = oslr::OnsEpoch::start(Eigen::VectorXd::Zero(k), support, nullptr, {},
                                               0.05, double(k));
  Eigen::VectorXd x(k);
  for (auto _ : state) {
    for (int i = 0; i < k; ++i) x[i] = rng.uniform(-1.0, 1.0);
    benchmark::DoNotOptimize(epoch.step(x, rng.uniform(-1.0, 1.0)));
  }
}
BENCHMARK(BM_OnsStep)->Arg(4)->Arg(8)->Arg(16);

}  // namespace
