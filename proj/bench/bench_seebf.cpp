#include <benchmark/benchmark.h>

#include "seebf/algorithms.hpp"
#include "seebf/experiments.hpp"

using namespace seebf;

namespace {

ExperimentSpec outage_spec(int threads) {
  ExperimentSpec s = default_spec(ExperimentId::kOutage);
  s.trials = 16;
  s.threads = threads;
  return s;
}

void BM_OutageSerial(benchmark::State& st) {
  const ExperimentSpec s = outage_spec(0);
  for (auto _ : st) benchmark::DoNotOptimize(run_experiment_serial(s).rows.size());
}

void BM_OutageParallel(benchmark::State& st) {
  const ExperimentSpec s = outage_spec(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(run_experiment(s).rows.size());
}

void BM_SdpPowerMin(benchmark::State& st) {
  const SystemConfig c = default_config();
  const ChannelSet ch = draw_channels(c, trial_seed(1, 0));
  for (auto _ : st) benchmark::DoNotOptimize(solve_power_min(2e5, ch, c).f_t);
}

void BM_ZfbfPowerMin(benchmark::State& st) {
  const SystemConfig c = default_config();
  const ChannelSet ch = draw_channels(c, trial_seed(1, 0));
  for (auto _ : st) benchmark::DoNotOptimize(solve_zfbf_power_min(2e5, ch, c).f_t);
}

void BM_MrtZfbfPowerMin(benchmark::State& st) {
  const SystemConfig c = default_config();
  const ChannelSet ch = draw_channels(c, trial_seed(1, 0));
  for (auto _ : st) benchmark::DoNotOptimize(solve_mrt_zfbf_an(2e5, ch, c).f_t);
}

}  // namespace

BENCHMARK(BM_OutageSerial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OutageParallel)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SdpPowerMin)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZfbfPowerMin)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MrtZfbfPowerMin)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
