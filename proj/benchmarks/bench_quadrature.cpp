#include <benchmark/benchmark.h>

#include <cmath>

#include "qjump/jc_detector.hpp"
#include "qjump/oscillator_detector.hpp"
#include "qjump/quadrature.hpp"

using namespace qjump;

static void BM_DampedOscillation(benchmark::State& state) {
  quad::QuadratureSpec spec;
  spec.oscillation_frequency_hint = 6.0;
  for (auto _ : state) {
    auto r = quad::integrate(
        [](double z) { return Complex(std::exp(-z) * std::pow(std::sin(3.0 * z), 2), 0.0); }, 0.0,
        40.0, spec);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_DampedOscillation);

static void BM_FnnJc(benchmark::State& state) {
  const auto p = jc::JCParams::resonant(0.5, 1000.0);
  const double T = 10.0 / p.lambda();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jc::fmn_jc(p, T, n, n).value);
}
BENCHMARK(BM_FnnJc)->Arg(1)->Arg(50)->Arg(300);

static void BM_FnnOsc(benchmark::State& state) {
  const double chi = static_cast<double>(state.range(0)) / 100.0;
  const auto p = osc::OscParams::resonant(chi, 1000.0);
  const double T = 10.0 / p.lambda();
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(osc::fnn_integral_osc(p, T, n, n).value);
}
BENCHMARK(BM_FnnOsc)->Args({50, 1})->Args({50, 300})->Args({100, 50})->Args({200, 300});

static void BM_SteepestDescent(benchmark::State& state) {
  const auto p = osc::OscParams::resonant(0.5, 1000.0);
  const double T = 10.0 / p.lambda();
  for (auto _ : state) benchmark::DoNotOptimize(osc::fnn_steepest_descent(p, 100, T).value);
}
BENCHMARK(BM_SteepestDescent);
