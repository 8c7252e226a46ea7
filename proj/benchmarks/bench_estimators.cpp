#include <benchmark/benchmark.h>

#include "cpvar/estimators.hpp"
#include "cpvar/lag_stats.hpp"
#include "cpvar/sim.hpp"

namespace {

cpvar::CircularSeries make_series(int n) {
  cpvar::RngStream rng(42);
  const auto theta = cpvar::build_scenario(3, n).theta();
  std::vector<double> v(theta.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = theta[i] + rng.normal();
  return cpvar::CircularSeries(std::move(v));
}

void BM_lag_stat_T(benchmark::State& state) {
  const auto x = make_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cpvar::lag_stat_T(x, 10));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_lag_stat_T)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_eve_ols(benchmark::State& state) {
  const auto x = make_series(1000);
  const int K = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cpvar::eve_ols(x, K));
}
BENCHMARK(BM_eve_ols)->Arg(5)->Arg(10)->Arg(20);

void BM_tune_K(benchmark::State& state) {
  const auto x = make_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cpvar::tune_K(x, 5, 20));
}
BENCHMARK(BM_tune_K)->Arg(1000)->Arg(10000);

void BM_mad(benchmark::State& state) {
  const auto x = make_series(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cpvar::mad(x));
}
BENCHMARK(BM_mad)->Arg(1000)->Arg(10000);

void BM_run_table_eve10(benchmark::State& state) {
  cpvar::SimScenario sc;
  sc.n = 1000;
  sc.mean = cpvar::build_scenario(1, 1000);
  sc.noise = cpvar::NoiseSpec::gaussian();
  sc.replicates = static_cast<int>(state.range(0));
  sc.seed = 7;
  const std::vector<cpvar::EstimatorKind> est{cpvar::EstimatorKind::eve(10)};
  cpvar::RunOptions opt;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(cpvar::run_table(sc, est, opt));
}
BENCHMARK(BM_run_table_eve10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
