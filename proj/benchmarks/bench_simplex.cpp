#include <benchmark/benchmark.h>

#include "oslr/dantzig.hpp"
#include "oslr/rng.hpp"

namespace {

// Instances shaped like mid-run selector problems: covariance near the
// identity, a few strong signal coordinates, a threshold below the signal.
oslr::DantzigProblem selector_like(int d, oslr::Rng& rng) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M(i, j) += rng.normal(0.0, 0.08);
  M = 0.5 * (M + M.transpose().eval());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < 4 && i < d; ++i) b[i] = 0.22 * rng.sign();
  for (int i = 0; i < d; ++i) b[i] += rng.normal(0.0, 0.03);
  return oslr::DantzigProblem(b, M, 0.06);
}

void BM_SolveDantzig(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  oslr::Rng rng(3);
  std::vector<oslr::DantzigProblem> pool;
  for (int i = 0; i < 64; ++i) pool.push_back(selector_like(d, rng));
  size_t at = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oslr::solve_dantzig(pool[at]));
    at = (at + 1) % pool.size();
  }
}
BENCHMARK(BM_SolveDantzig)->Arg(10)->Arg(20)->Arg(40);

void BM_SolveDantzigZeroOptimal(benchmark::State& state) {
  // Early practical rounds: gamma dominates and w = 0 is optimal at once.
  const int d = static_cast<int>(state.range(0));
  oslr::Rng rng(4);
  Eigen::VectorXd b(d);
  for (int i = 0; i < d; ++i) b[i] = rng.normal(0.0, 0.1);
  const oslr::DantzigProblem p(b, Eigen::MatrixXd::Identity(d, d), 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oslr::solve_dantzig(p));
  }
}
BENCHMARK(BM_SolveDantzigZeroOptimal)->Arg(20)->Arg(40);

}  // namespace
