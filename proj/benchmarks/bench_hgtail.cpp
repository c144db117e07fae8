#include <benchmark/benchmark.h>

#include "hgtail/bounds.hpp"
#include "hgtail/hypergeom.hpp"
#include "hgtail/special_fn.hpp"
#include "hgtail/sweep.hpp"

namespace {

void BM_LnGamma(benchmark::State& state) {
  double x = 0.75;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hgtail::ln_gamma(x));
    x = x < 1e6 ? x * 1.37 : 0.75;
  }
}
BENCHMARK(BM_LnGamma);

void BM_RegIncBeta(benchmark::State& state) {
  const auto n = static_cast<double>(state.range(0));
  const double p = 0.05;
  const double d = std::floor(n * p + 2.0 * std::sqrt(n * p));
  for (auto _ : state) benchmark::DoNotOptimize(hgtail::reg_inc_beta(p, d, n - d + 1));
}
BENCHMARK(BM_RegIncBeta)->RangeMultiplier(10)->Range(100, 1000000);

void BM_ExactUpperTail(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  const hgtail::HypergeomParams params(N, N / 20, N / 2);
  const std::int64_t d = params.mean_floor() + 1;
  for (auto _ : state) benchmark::DoNotOptimize(hgtail::exact_upper_tail(params, d));
  state.SetComplexityN(N);
}
BENCHMARK(BM_ExactUpperTail)->RangeMultiplier(10)->Range(1000, 10000000)->Complexity();

void BM_BestBound(benchmark::State& state) {
  const hgtail::HypergeomParams params(10000, 500, 2000);
  const hgtail::TailQuery q{params, 120, hgtail::TailDirection::Upper};
  const auto methods = hgtail::MethodSet::all();
  for (auto _ : state) benchmark::DoNotOptimize(hgtail::best_bound(q, methods));
}
BENCHMARK(BM_BestBound);

void BM_Sweep(benchmark::State& state) {
  hgtail::SweepConfig config;
  config.population = 10000;
  config.ratio = 0.05;
  config.draws = 2000;
  config.delta_min = 0.0;
  config.delta_max = 0.1;
  config.delta_steps = 100;
  for (auto _ : state) benchmark::DoNotOptimize(hgtail::run_sweep(config));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
