#include "spotbid/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <set>

#include <fmt/format.h>

#include "spotbid/error.hpp"
#include "spotbid/version.hpp"

namespace spotbid {
namespace {

// Runs body(i) for i in [0, n), in parallel if asked. The first exception
// (lowest index) is rethrown on the calling thread after all units finish.
template <typename Body>
void for_each_unit(std::size_t n, Execution execution, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) if (execution == Execution::Parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> sorted_unique(std::vector<double> values, const char* what) {
  if (values.empty()) throw DomainError(fmt::format("sweep: {} list is empty", what));
  for (const double v : values) {
    if (!std::isfinite(v)) throw DomainError(fmt::format("sweep: non-finite value in {}", what));
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

TraceMeta describe(const PriceTrace& trace) {
  TraceMeta meta{trace.instance_type, trace.product, trace.zone, {}, {}, trace.size()};
  if (!trace.points.empty()) {
    meta.start = trace.points.front().timestamp;
    meta.end = trace.points.back().timestamp;
  }
  return meta;
}

BacktestReport backtest(const PriceTrace& trace, std::span<const StrategySpec> specs, const PriceBand& band,
                        Execution execution) {
  if (specs.empty()) throw DomainError("backtest needs at least one strategy");
  if (trace.points.empty()) throw DomainError("backtest needs a nonempty trace");
  std::set<std::string> names;
  for (const auto& spec : specs) {
    spec.check(band);
    if (!names.insert(spec.name()).second) {
      throw DomainError(fmt::format("strategy '{}' listed twice", spec.name()));
    }
  }

  const auto prices = trace.prices();
  std::vector<std::optional<StrategyResult>> slots(specs.size());
  for_each_unit(specs.size(), execution, [&](std::size_t i) {
    BidSeries series{specs[i].name(), run_bids(specs[i], prices, band), specs[i]};
    MetricsSummary m{success_rate(series.bids, prices), distance(series.bids, prices), std::nullopt};
    slots[i] = StrategyResult{std::move(series), m, false};
  });

  BacktestReport report{describe(trace), band, {}, {}, kEngineVersion, {}, {}};
  std::vector<NamedDistance> distances;
  std::vector<Objective> objectives;
  for (auto& slot : slots) {
    distances.push_back({slot->series.strategy_name, slot->metrics.distance});
    objectives.push_back({slot->metrics.success_rate, slot->metrics.distance});
    report.strategies.push_back(std::move(*slot));
  }

  report.comparison_rr = relative_rationality(std::span<const NamedDistance>(distances));
  const auto front = pareto_front(objectives);
  for (std::size_t i = 0; i < report.strategies.size(); ++i) {
    report.strategies[i].metrics.relative_rationality = report.comparison_rr[i].relative_rationality;
    report.strategies[i].pareto_member = front[i];
  }
  for (const auto& s : report.strategies) {
    if (s.series.spec.gains && !s.series.spec.gains->corrective()) {
      report.warnings.push_back(fmt::format(
          "strategy '{}' runs with non-negative PI gains; bids are not corrected toward the spot price",
          s.series.strategy_name));
    }
  }
  return report;
}

std::vector<SweepPoint> sweep(const PriceTrace& trace, const SweepConfig& config, Execution execution) {
  if (trace.points.empty()) throw DomainError("sweep needs a nonempty trace");
  const auto kp = sorted_unique(config.kp_magnitudes, "kp magnitude");
  const auto ki = sorted_unique(config.ki_magnitudes, "ki magnitude");
  const auto pre = sorted_unique(config.pre_deltas, "pre-delta");
  const auto post = sorted_unique(config.post_deltas, "post-delta");
  if (kp.front() <= 0.0 || ki.front() <= 0.0) throw DomainError("sweep: gain magnitudes must be > 0");

  const auto make_gains = [&](double kp_mag, double ki_mag) {
    return config.allow_positive_gains ? PiGains::literal(kp_mag, ki_mag)
                                       : PiGains::from_magnitudes(kp_mag, ki_mag);
  };
  // Fail on configuration problems before any work is scheduled.
  StrategySpec::feedback(make_gains(kp.front(), ki.front()), config.initial_bid).check(config.band);

  const std::size_t n = kp.size() * ki.size() * pre.size() * post.size();
  const auto prices = trace.prices();
  std::vector<SweepPoint> points(n);

  for_each_unit(n, execution, [&](std::size_t cell) {
    std::size_t rest = cell;
    const std::size_t l = rest % post.size();
    rest /= post.size();
    const std::size_t k = rest % pre.size();
    rest /= pre.size();
    const std::size_t j = rest % ki.size();
    const std::size_t i = rest / ki.size();

    const auto gains = make_gains(kp[i], ki[j]);
    const auto spec = StrategySpec::feedback(gains, config.initial_bid, Adjustments{pre[k], post[l]});
    const auto bids = run_bids(spec, prices, config.band);

    auto& p = points[cell];
    p.kp = gains.kp();
    p.ki = gains.ki();
    p.pre_delta = pre[k];
    p.post_delta = post[l];
    p.success_rate = success_rate(bids, prices);
    p.distance = distance(bids, prices);
  });

  std::vector<double> d;
  d.reserve(n);
  for (const auto& p : points) d.push_back(p.distance);
  const auto rr = relative_rationality(std::span<const double>(d));
  for (std::size_t c = 0; c < n; ++c) points[c].relative_rationality = rr[c];
  return pareto(std::move(points));
}

std::vector<SweepPoint> pareto(std::vector<SweepPoint> points) {
  if (points.empty()) throw DomainError("pareto needs at least one point");
  std::vector<Objective> objectives;
  objectives.reserve(points.size());
  for (const auto& p : points) objectives.push_back({p.success_rate, p.distance});
  const auto front = pareto_front(objectives);
  for (std::size_t i = 0; i < points.size(); ++i) points[i].pareto_member = front[i];
  return points;
}

}  // namespace spotbid
