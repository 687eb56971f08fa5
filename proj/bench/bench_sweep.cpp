// Serial reference vs OpenMP sweep on a 1001-point step-hold trace.
#include <benchmark/benchmark.h>

#include "spotbid/engine.hpp"

namespace {

const spotbid::PriceTrace& fixture_trace() {
  static const auto trace = spotbid::synth_step_hold(
      spotbid::SynthConfig{spotbid::PriceBand(0.256, 2.600), 1001, 10, 0.3, 42});
  return trace;
}

spotbid::SweepConfig grid(std::size_t side) {
  std::vector<double> mags;
  for (std::size_t i = 0; i < side; ++i) mags.push_back(1.0 + 5.0 * static_cast<double>(i));
  return spotbid::SweepConfig{mags, mags, {0.0, 0.02}, {0.0, 0.02}, spotbid::PriceBand(0.256, 2.600), 1.3, false};
}

void BM_SweepSerial(benchmark::State& state) {
  const auto config = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spotbid::sweep(fixture_trace(), config, spotbid::Execution::Serial));
  }
}

void BM_SweepParallel(benchmark::State& state) {
  const auto config = grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spotbid::sweep(fixture_trace(), config, spotbid::Execution::Parallel));
  }
}

void BM_BacktestSixStrategies(benchmark::State& state) {
  const spotbid::PriceBand band(0.256, 2.600);
  using spotbid::StrategyKind;
  using spotbid::StrategySpec;
  const std::vector<StrategySpec> specs{
      StrategySpec::feedback(spotbid::PiGains::from_magnitudes(10, 10), 1.3),
      StrategySpec::statistic(StrategyKind::Minimum, spotbid::StatMode::Causal, 1.3),
      StrategySpec::statistic(StrategyKind::Mean, spotbid::StatMode::Causal, 1.3),
      StrategySpec::statistic(StrategyKind::High, spotbid::StatMode::Causal, 1.3),
      StrategySpec::current(1.3),
      StrategySpec::on_demand(1.3)};
  const auto execution = state.range(0) == 0 ? spotbid::Execution::Serial : spotbid::Execution::Parallel;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spotbid::backtest(fixture_trace(), specs, band, execution));
  }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BacktestSixStrategies)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
