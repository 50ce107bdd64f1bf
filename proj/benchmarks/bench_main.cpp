#include <benchmark/benchmark.h>

#include "dlab/bilinear.hpp"
#include "dlab/counting.hpp"
#include "dlab/nls.hpp"
#include "dlab/spectral.hpp"
#include "dlab/strichartz.hpp"

using namespace dlab;

namespace {

SpatialField random_field(const DomainSpec& spec, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  SpatialField f(spec);
  for (auto& v : f.data()) v = complex_normal(rng);
  return f;
}

void BM_ForwardFFT(benchmark::State& state) {
  const DomainSpec spec = DomainSpec::make(2, 2, static_cast<int>(state.range(0)));
  const SpatialField f = random_field(spec, 1);
  for (auto _ : state) benchmark::DoNotOptimize(to_frequency(f));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(spec.size()));
}
BENCHMARK(BM_ForwardFFT)->Arg(8)->Arg(16)->Arg(32);

void BM_QuarticGradient(benchmark::State& state) {
  DomainSpec spec = DomainSpec::make(3, 1, 8);
  spec.grid = {4, 4, 4, 16};
  const FreqRect R = sample_rect(spec, static_cast<double>(state.range(0)), 1.0, 2);
  const QuarticFunctional F(spec, rect_modes(spec, R), 4.0, TimeWindow{});
  const CVec c = trial_start(F, 3);
  CVec g;
  for (auto _ : state) benchmark::DoNotOptimize(F.value_and_gradient(c, g));
  state.counters["modes"] = static_cast<double>(F.mode_count());
}
BENCHMARK(BM_QuarticGradient)->Arg(4)->Arg(16);

void BM_SetMeasures(benchmark::State& state) {
  ConvSetQuery q;
  q.m = static_cast<int>(state.range(0));
  q.n = 4 - q.m;
  q.lambda = 16;
  q.mu = 4;
  q.tau = -2.0 * 16 * 16 / 4;
  for (auto _ : state) benchmark::DoNotOptimize(set_measures(q, q.lambda / 64));
}
BENCHMARK(BM_SetMeasures)->Arg(3)->Arg(2);

void BM_ProductNorm(benchmark::State& state) {
  const DomainSpec spec = DomainSpec::make(3, 1, 8);
  Rng rng = make_rng(4);
  const auto a = random_shell_data(spec, 16, static_cast<std::size_t>(state.range(0)), rng);
  const auto b = random_shell_data(spec, 4, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(product_norm_sq(a, b, TimeKernel::unit_interval));
}
BENCHMARK(BM_ProductNorm)->Arg(64)->Arg(256);

void BM_StrangStep(benchmark::State& state) {
  const DomainSpec spec = DomainSpec::make(0, 4, static_cast<int>(state.range(0)));
  CVec u = random_smooth_data(spec, 1.0, 5).data();
  StrangStepper stepper(spec, NLSConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(stepper.step(u));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(spec.size()));
}
BENCHMARK(BM_StrangStep)->Arg(8)->Arg(16);

}  // namespace
BENCHMARK_MAIN();
