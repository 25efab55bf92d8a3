#include <benchmark/benchmark.h>

#include "qjump/trajectories.hpp"

using namespace qjump;

static traj::TrajectoryConfig config(int trajectories) {
  const auto p = jc::JCParams::resonant(0.5, 1000.0);
  return {p, 10.0 / p.lambda(), fock::DensityMatrix::fock_projector(7, 5), trajectories, 1};
}

static void BM_WaitingDensity(benchmark::State& state) {
  const auto c = config(1);
  for (auto _ : state) benchmark::DoNotOptimize(traj::waiting_density(c).total());
}
BENCHMARK(BM_WaitingDensity)->Unit(benchmark::kMillisecond);

static void BM_SampleFirstJumps(benchmark::State& state) {
  const auto c = config(static_cast<int>(state.range(0)));
  const auto table = traj::waiting_density(c);
  for (auto _ : state) {
    auto ens = traj::sample_first_jumps(c, table);
    benchmark::DoNotOptimize(ens.jump_fraction);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleFirstJumps)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
