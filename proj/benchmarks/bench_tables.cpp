#include <benchmark/benchmark.h>

#include "qjump/coefficients.hpp"

using namespace qjump;

static void BM_JcDiagonalTable(benchmark::State& state) {
  const auto p = jc::JCParams::resonant(0.5, 1000.0);
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto t = build_jc_table(p, 10.0 / p.lambda(), n_max, {.diagonal_only = true});
    benchmark::DoNotOptimize(t.entries().data());
  }
}
BENCHMARK(BM_JcDiagonalTable)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_JcFullTable(benchmark::State& state) {
  const auto p = jc::JCParams::resonant(0.5, 1000.0);
  for (auto _ : state) {
    auto t = build_jc_table(p, 10.0 / p.lambda(), static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(t.entries().data());
  }
}
BENCHMARK(BM_JcFullTable)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_OscDiagonalTable(benchmark::State& state) {
  const auto p = osc::OscParams::resonant(0.5, 1000.0);
  for (auto _ : state) {
    auto t = build_osc_table(p, 10.0 / p.lambda(), static_cast<int>(state.range(0)),
                             {.diagonal_only = true});
    benchmark::DoNotOptimize(t.entries().data());
  }
}
BENCHMARK(BM_OscDiagonalTable)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);
