#include <benchmark/benchmark.h>

#include "ids/empirical.hpp"
#include "ids/random_field.hpp"

using namespace ids;

namespace {

void BM_SampleField(benchmark::State& state) {
  FieldSpec spec;
  spec.correlation_radius = state.range(0);
  const Cube c(2, 64);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spec.seed = ++seed;
    benchmark::DoNotOptimize(sample(spec, c));
  }
}
BENCHMARK(BM_SampleField)->Arg(0)->Arg(1)->Arg(2);

void BM_BlockAverage(benchmark::State& state) {
  FieldSpec spec;
  spec.seed = 3;
  const Coord n = state.range(0);
  const PotentialSample w = sample(spec, Cube(2, n));
  for (auto _ : state) benchmark::DoNotOptimize(block_average(w, n, 6, 1));
}
BENCHMARK(BM_BlockAverage)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_EmpiricalPhi(benchmark::State& state) {
  FieldSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_phi(spec, 2, 4, 0, static_cast<std::size_t>(state.range(0)), 7));
  }
}
BENCHMARK(BM_EmpiricalPhi)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ConcentrationSingleSite(benchmark::State& state) {
  ConcentrationConfig cfg;
  cfg.m = 1;
  cfg.s = static_cast<std::size_t>(state.range(0));
  cfg.replicas = 200;
  const EmpiricalPhi ref = concentration_reference(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(concentration_experiment(cfg, ref));
}
BENCHMARK(BM_ConcentrationSingleSite)->Arg(100)->Arg(1600)->Unit(benchmark::kMillisecond);

}  // namespace
