#include <benchmark/benchmark.h>

#include "crvanet/propagation.hpp"
#include "crvanet/sensing.hpp"
#include "crvanet/simulation.hpp"

namespace {

void BM_HataSuburban(benchmark::State& state) {
  double d = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(crvanet::hata_suburban_loss(150.0, 50.0, 1.5, d));
    d = d < 19.0 ? d + 0.5 : 1.0;
  }
}
BENCHMARK(BM_HataSuburban);

void BM_EnergyStatistic(benchmark::State& state) {
  const crvanet::DetectorParams det = crvanet::make_detector(100, 1e-13, 0.1);
  crvanet::Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(crvanet::energy_statistic(190.0, det, rng));
}
BENCHMARK(BM_EnergyStatistic);

void BM_ShortRun(benchmark::State& state) {
  crvanet::ScenarioConfig config = crvanet::default_scenario();
  config.runningTime = 1.0;
  config.scheme = static_cast<crvanet::Scheme>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(crvanet::run_simulation(config).allocations);
}
BENCHMARK(BM_ShortRun)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
