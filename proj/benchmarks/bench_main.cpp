#include <benchmark/benchmark.h>

#include "twc/heisenberg.hpp"
#include "twc/spectra.hpp"
#include "twc/twisted.hpp"

namespace {

void BM_PairNorm(benchmark::State& state) {
  const twc::Modulus n(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(twc::pair_norm(n, 1, 1, 1, 2).norm);
}
BENCHMARK(BM_PairNorm)->Arg(7)->Arg(31)->Arg(61);

void BM_GapScanSampled(benchmark::State& state) {
  const twc::Modulus n(state.range(0));
  twc::ScanOptions opts;
  opts.count = 20;
  for (auto _ : state) benchmark::DoNotOptimize(twc::gap_scan(n, opts).min_gap);
}
BENCHMARK(BM_GapScanSampled)->Arg(17)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_EqualSlopeGrid(benchmark::State& state) {
  const twc::Modulus n(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(twc::equal_slope_grid(n, 0.5).size());
}
BENCHMARK(BM_EqualSlopeGrid)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_WalkStep(benchmark::State& state) {
  const twc::Modulus n(state.range(0));
  twc::RandomWalk walk(twc::two_generator_set(n, 1, 0, 0, 1));
  for (auto _ : state) walk.step();
}
BENCHMARK(BM_WalkStep)->Arg(5)->Arg(13);

void BM_BuildX(benchmark::State& state) {
  const twc::Modulus n(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(twc::build_X(n, 2, 3)(0, 0));
}
BENCHMARK(BM_BuildX)->Arg(13)->Arg(61);

}  // namespace

BENCHMARK_MAIN();
