#include <benchmark/benchmark.h>

#include "harmonic/norms.hpp"

namespace {

using namespace harmonic;

void BM_ParseExpression(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(AnalyticFunction::parse("(z - z^2/2 + z^3/6)/(1-z)^3"));
}
BENCHMARK(BM_ParseExpression);

void BM_Jet(benchmark::State& state) {
  const AnalyticFunction f = AnalyticFunction::parse("exp(z)*log(1+z)/(1-z)^2");
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(f.jet(Complex(0.3, -0.2), order));
}
BENCHMARK(BM_Jet)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_Schwarzian(benchmark::State& state) {
  const HarmonicMap K = catalog_map("K");
  for (auto _ : state) benchmark::DoNotOptimize(schwarzian(K, Complex(0.3, -0.2)));
}
BENCHMARK(BM_Schwarzian);

void BM_SchwarzianDilatationForm(benchmark::State& state) {
  const HarmonicMap f = shear(AnalyticFunction::parse("z/(1-z)^2"), AnalyticFunction::parse("z"), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(schwarzian(f, Complex(0.3, -0.2)));
}
BENCHMARK(BM_SchwarzianDilatationForm);

void BM_Tamanoi(benchmark::State& state) {
  const HarmonicMap K = catalog_map("K");
  for (auto _ : state) benchmark::DoNotOptimize(tamanoi_schwarzian(K, Complex(0.3, -0.2)));
}
BENCHMARK(BM_Tamanoi);

void BM_Evaluate(benchmark::State& state) {
  const HarmonicMap f = shear(AnalyticFunction::parse("z/(1-z)"), AnalyticFunction::parse("-z"), M_PI / 2);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(f, Complex(0.6, 0.5)));
}
BENCHMARK(BM_Evaluate);

void BM_NormGrid(benchmark::State& state) {
  const HarmonicMap K = catalog_map("K");
  SearchConfig cfg;
  cfg.rays = static_cast<int>(state.range(0));
  cfg.radial_samples = cfg.rays / 2;
  for (auto _ : state) benchmark::DoNotOptimize(hyperbolic_sup(K, NormOp::S, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.rays * cfg.radial_samples);
}
BENCHMARK(BM_NormGrid)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
