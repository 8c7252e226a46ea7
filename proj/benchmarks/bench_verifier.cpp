#include <benchmark/benchmark.h>

#include "cpvar/estimators.hpp"
#include "cpvar/quad_estimator.hpp"
#include "cpvar/verifier.hpp"

namespace {

void BM_is_unbiased_circular_dense(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = cpvar::QuadEstimator::eve_matrix(n, 10);
  for (auto _ : state)
    benchmark::DoNotOptimize(cpvar::is_unbiased_circular(a, 20));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_is_unbiased_circular_dense)->Arg(128)->Arg(256)->Arg(512)
    ->Unit(benchmark::kMillisecond);

void BM_is_unbiased_circular_symbol(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a =
      cpvar::CirculantQuad::from_coefficients(n, cpvar::ols_weights(10));
  for (auto _ : state)
    benchmark::DoNotOptimize(cpvar::is_unbiased_circular(a, 20));
}
BENCHMARK(BM_is_unbiased_circular_symbol)->Arg(512)->Arg(65536);

void BM_is_equivariant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = cpvar::QuadEstimator::eve_matrix(n, 10);
  for (auto _ : state) benchmark::DoNotOptimize(cpvar::is_equivariant(a));
}
BENCHMARK(BM_is_equivariant)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_classical_enumeration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = cpvar::QuadEstimator::ms_matrix(n, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(cpvar::is_unbiased_classical(a, 4));
}
BENCHMARK(BM_classical_enumeration)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
