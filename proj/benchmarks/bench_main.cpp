#include <benchmark/benchmark.h>

#include "mollify/fourier.hpp"
#include "mollify/mollifier.hpp"
#include "mollify/noise.hpp"
#include "mollify/problems.hpp"
#include "mollify/regularizer.hpp"

using namespace mollify;

namespace {

FilterSpec example_spec(int id, int n) {
  return FilterSpec(Grid2D(n, 10.0), diffusion_symbol(example_problem(id)),
                    MollifierSymbol::gaussian());
}

void BM_ForwardFt(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RealField u = make_initial(example_problem(1), Grid2D(n, 10.0));
  for (auto _ : state) benchmark::DoNotOptimize(forward_ft(u));
}
BENCHMARK(BM_ForwardFt)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMicrosecond);

void BM_Reconstruct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FilterSpec spec = example_spec(1, n);
  const RealField g = add_noise(make_exact_data(example_problem(1), spec.grid()), {1.0, 1}).g_delta;
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(spec, 0.1, g));
}
BENCHMARK(BM_Reconstruct)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMicrosecond);

// Full Morozov descent at 1% noise, discrepancy evaluator construction included.
void BM_MorozovSelect(benchmark::State& state) {
  const int id = static_cast<int>(state.range(0));
  const FilterSpec spec = example_spec(id, 256);
  const NoisyData nd = add_noise(make_exact_data(example_problem(id), spec.grid()), {1.0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(select_beta_morozov(spec, nd.g_delta, nd.delta));
}
BENCHMARK(BM_MorozovSelect)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
