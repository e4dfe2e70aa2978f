#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "ids/operator.hpp"
#include "ids/spectra.hpp"

using namespace ids;

namespace {

PotentialSample field_on(const Cube& c, std::uint64_t seed = 1) {
  FieldSpec spec;
  spec.seed = seed;
  return sample(spec, c);
}

void BM_EigenvaluesChain(benchmark::State& state) {
  const Cube c(1, state.range(0));
  const RestrictedOperator h = assemble(c, field_on(c));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigenvaluesChain)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

void BM_EigenvaluesSquare(benchmark::State& state) {
  const Cube c(2, state.range(0));
  const RestrictedOperator h = assemble(c, field_on(c));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(h));
}
BENCHMARK(BM_EigenvaluesSquare)->DenseRange(10, 60, 25)->Unit(benchmark::kMillisecond);

void BM_EigenvaluesCube(benchmark::State& state) {
  const Cube c(3, state.range(0));
  const RestrictedOperator h = assemble(c, field_on(c));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(h));
}
BENCHMARK(BM_EigenvaluesCube)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const Cube c(2, state.range(0));
  const PotentialSample w = field_on(c);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(c, w));
}
BENCHMARK(BM_Assemble)->Arg(30)->Arg(100);

void BM_SturmCount(benchmark::State& state) {
  const Cube c(1, state.range(0));
  const RestrictedOperator h = assemble(c, field_on(c));
  const auto off = h.subdiagonal();
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sturm_count(h.diagonal(), off, x));
    x = x > 5.0 ? 0.0 : x + 0.37;
  }
}
BENCHMARK(BM_SturmCount)->Range(64, 4096);

StepFunction random_cdf(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::vector<double> v(n);
  for (auto& x : v) x = std::uniform_real_distribution<double>(0.0, 1.0)(g);
  std::sort(v.begin(), v.end());
  return counting_function(v, static_cast<double>(n));
}

void BM_SupNormMerge(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const StepFunction f = random_cdf(n, 1), g = random_cdf(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sup_norm_distance(f, g));
}
BENCHMARK(BM_SupNormMerge)->Range(1 << 10, 1 << 18);

void BM_SupNormAgainstLargeReference(benchmark::State& state) {
  const StepFunction ref = random_cdf(1 << 22, 1);
  const StepFunction f = random_cdf(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(sup_norm_distance(f, ref));
}
BENCHMARK(BM_SupNormAgainstLargeReference)->Arg(100)->Arg(1600);

void BM_Average(benchmark::State& state) {
  std::vector<StepFunction> fs;
  for (int i = 0; i < state.range(0); ++i) fs.push_back(random_cdf(64, static_cast<std::uint64_t>(i)));
  for (auto _ : state) benchmark::DoNotOptimize(average(fs));
}
BENCHMARK(BM_Average)->Arg(16)->Arg(256);

}  // namespace
