#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "spotbid/band_model.hpp"
#include "spotbid/metrics.hpp"
#include "spotbid/pareto.hpp"
#include "spotbid/strategies.hpp"
#include "spotbid/trace.hpp"

namespace spotbid {

/// Serial runs the reference loop; Parallel distributes independent work
/// units (strategies, grid cells) over OpenMP threads. Both produce
/// identical results.
enum class Execution { Serial, Parallel };

struct TraceMeta {
  std::string instance_type;
  std::string product;
  std::string zone;
  Timestamp start;
  Timestamp end;
  std::size_t point_count = 0;
};

TraceMeta describe(const PriceTrace& trace);

struct StrategyResult {
  BidSeries series;
  MetricsSummary metrics;
  bool pareto_member = false;  // within this report's strategy set
};

struct BacktestReport {
  TraceMeta trace;
  PriceBand band;
  std::vector<StrategyResult> strategies;        // input spec order
  std::vector<NamedRationality> comparison_rr;   // same order
  std::string engine_version;
  nlohmann::ordered_json config_echo = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
};

/// Runs every spec on the same trace, scores it and computes relative
/// rationality over the whole set. Strategy names must be distinct.
BacktestReport backtest(const PriceTrace& trace, std::span<const StrategySpec> specs, const PriceBand& band,
                        Execution execution = Execution::Parallel);

/// Cartesian grid over Feedback gain magnitudes and adjustments.
struct SweepConfig {
  std::vector<double> kp_magnitudes;
  std::vector<double> ki_magnitudes;
  std::vector<double> pre_deltas{0.0};
  std::vector<double> post_deltas{0.0};
  PriceBand band;
  double initial_bid = 0.0;
  /// Use magnitudes as positive gains instead of negating them.
  bool allow_positive_gains = false;
};

struct SweepPoint {
  double kp = 0.0;  // signed gain actually applied
  double ki = 0.0;
  double pre_delta = 0.0;
  double post_delta = 0.0;
  double success_rate = 0.0;
  double distance = 0.0;
  double relative_rationality = 0.0;  // over the whole sweep
  bool pareto_member = false;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

/// Evaluates Feedback at every grid cell. Points come back ordered
/// lexicographically by (kp magnitude, ki magnitude, pre_delta, post_delta)
/// ascending, with duplicate grid values collapsed, whatever the execution.
std::vector<SweepPoint> sweep(const PriceTrace& trace, const SweepConfig& config,
                              Execution execution = Execution::Parallel);

/// Sets pareto_member on every point over the (sr, d) objectives.
std::vector<SweepPoint> pareto(std::vector<SweepPoint> points);

}  // namespace spotbid
