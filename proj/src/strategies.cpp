#include "spotbid/strategies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "spotbid/error.hpp"

namespace spotbid {
namespace {

constexpr std::array<std::pair<StrategyKind, std::string_view>, 6> kKindNames{{
    {StrategyKind::Feedback, "feedback"},
    {StrategyKind::Minimum, "minimum"},
    {StrategyKind::Mean, "mean"},
    {StrategyKind::High, "high"},
    {StrategyKind::Current, "current"},
    {StrategyKind::OnDemand, "ondemand"},
}};

bool is_statistic(StrategyKind kind) {
  return kind == StrategyKind::Minimum || kind == StrategyKind::Mean || kind == StrategyKind::High;
}

[[noreturn]] void inconsistent(const StrategySpec& spec) {
  throw DomainError(fmt::format("inconsistent state for strategy '{}'", spec.name()));
}

template <typename T>
const T& state_as(const StrategySpec& spec, const StrategyState& state) {
  const T* s = std::get_if<T>(&state);
  if (s == nullptr) inconsistent(spec);
  return *s;
}

double post_adjusted(double bid, const StrategySpec& spec, const PriceBand& band) {
  return band.clamp(bid + spec.adjustments.post_delta);
}

}  // namespace

std::string_view to_string(StrategyKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<StrategyKind> parse_strategy_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(StatMode mode) noexcept {
  return mode == StatMode::Causal ? "causal" : "fulltrace";
}

std::optional<StatMode> parse_stat_mode(std::string_view name) noexcept {
  if (name == "causal") return StatMode::Causal;
  if (name == "fulltrace") return StatMode::FullTrace;
  return std::nullopt;
}

StrategySpec StrategySpec::feedback(PiGains gains, double initial_bid, Adjustments adjustments) {
  StrategySpec s;
  s.kind = StrategyKind::Feedback;
  s.gains = gains;
  s.adjustments = adjustments;
  s.initial_bid = initial_bid;
  return s;
}

StrategySpec StrategySpec::statistic(StrategyKind kind, StatMode mode, double initial_bid,
                                     Adjustments adjustments) {
  if (!is_statistic(kind)) {
    throw DomainError(fmt::format("'{}' is not a minimum/mean/high strategy", to_string(kind)));
  }
  StrategySpec s;
  s.kind = kind;
  s.stat_mode = mode;
  s.adjustments = adjustments;
  s.initial_bid = initial_bid;
  return s;
}

StrategySpec StrategySpec::current(double initial_bid, Adjustments adjustments) {
  StrategySpec s;
  s.kind = StrategyKind::Current;
  s.adjustments = adjustments;
  s.initial_bid = initial_bid;
  return s;
}

StrategySpec StrategySpec::on_demand(double initial_bid) {
  StrategySpec s;
  s.kind = StrategyKind::OnDemand;
  s.initial_bid = initial_bid;
  return s;
}

void StrategySpec::check(const PriceBand& band) const {
  if (gains.has_value() != (kind == StrategyKind::Feedback)) {
    throw DomainError(fmt::format("strategy '{}': gains must be set exactly for feedback", name()));
  }
  if (stat_mode.has_value() != is_statistic(kind)) {
    throw DomainError(
        fmt::format("strategy '{}': stat mode must be set exactly for minimum/mean/high", name()));
  }
  if (!std::isfinite(adjustments.pre_delta) || !std::isfinite(adjustments.post_delta)) {
    throw DomainError(fmt::format("strategy '{}': adjustments must be finite", name()));
  }
  if (!std::isfinite(initial_bid) || !band.contains(initial_bid)) {
    throw DomainError(fmt::format("strategy '{}': initial bid {} outside band [{}, {}]", name(), initial_bid,
                                  band.floor(), band.ceiling()));
  }
}

double initial_bid_default(const PriceBand& band) noexcept { return band.ceiling() / 2.0; }

StrategyState initial_state(const StrategySpec& spec, const PriceBand& band,
                            std::span<const double> trace_prices) {
  switch (spec.kind) {
    case StrategyKind::Feedback:
      return FeedbackState{ControllerState{}, spec.initial_bid};
    case StrategyKind::Current:
      return CurrentState{};
    case StrategyKind::OnDemand:
      return OnDemandState{};
    case StrategyKind::Minimum:
    case StrategyKind::Mean:
    case StrategyKind::High:
      break;
  }
  if (!spec.stat_mode) inconsistent(spec);
  if (*spec.stat_mode == StatMode::Causal) {
    if (spec.kind == StrategyKind::Minimum) return RunningMinState{};
    if (spec.kind == StrategyKind::Mean) return RunningMeanState{};
    return RunningMaxState{};
  }

  if (trace_prices.empty()) {
    throw DomainError(fmt::format("strategy '{}' in fulltrace mode needs a nonempty trace", spec.name()));
  }
  double stat = 0.0;
  if (spec.kind == StrategyKind::Minimum) {
    stat = *std::min_element(trace_prices.begin(), trace_prices.end());
  } else if (spec.kind == StrategyKind::High) {
    stat = *std::max_element(trace_prices.begin(), trace_prices.end());
  } else {
    stat = std::accumulate(trace_prices.begin(), trace_prices.end(), 0.0) /
           static_cast<double>(trace_prices.size());
  }
  return FixedBidState{post_adjusted(stat, spec, band)};
}

double first_bid(const StrategySpec& spec, const StrategyState& state, const PriceBand& band) {
  if (spec.kind == StrategyKind::OnDemand) return band.ceiling();
  if (const auto* fixed = std::get_if<FixedBidState>(&state)) return fixed->bid;
  return spec.initial_bid;
}

BidStep next_bid(const StrategySpec& spec, const StrategyState& state, double observed_price,
                 const PriceBand& band) {
  if (!std::isfinite(observed_price) || !(observed_price > 0.0)) {
    throw DomainError(fmt::format("observed price must be positive and finite, got {}", observed_price));
  }

  switch (spec.kind) {
    case StrategyKind::Feedback: {
      const auto& fb = state_as<FeedbackState>(spec, state);
      if (!spec.gains) inconsistent(spec);
      const double error = (observed_price + spec.adjustments.pre_delta) - fb.previous_bid;
      const auto [u, controller] = step(fb.controller, error, *spec.gains, band);
      const double raw = bid_from_control(u, band);
      return {post_adjusted(raw, spec, band), FeedbackState{controller, raw}};
    }
    case StrategyKind::Current:
      state_as<CurrentState>(spec, state);
      return {post_adjusted(observed_price, spec, band), CurrentState{observed_price}};
    case StrategyKind::OnDemand:
      state_as<OnDemandState>(spec, state);
      return {band.ceiling(), OnDemandState{}};
    case StrategyKind::Minimum:
    case StrategyKind::Mean:
    case StrategyKind::High:
      break;
  }

  if (const auto* fixed = std::get_if<FixedBidState>(&state)) {
    if (spec.stat_mode != StatMode::FullTrace) inconsistent(spec);
    return {fixed->bid, *fixed};
  }
  if (spec.stat_mode != StatMode::Causal) inconsistent(spec);

  if (spec.kind == StrategyKind::Minimum) {
    const auto& s = state_as<RunningMinState>(spec, state);
    const double m = s.min ? std::min(*s.min, observed_price) : observed_price;
    return {post_adjusted(m, spec, band), RunningMinState{m}};
  }
  if (spec.kind == StrategyKind::High) {
    const auto& s = state_as<RunningMaxState>(spec, state);
    const double m = s.max ? std::max(*s.max, observed_price) : observed_price;
    return {post_adjusted(m, spec, band), RunningMaxState{m}};
  }
  const auto& s = state_as<RunningMeanState>(spec, state);
  RunningMeanState next{s.sum + observed_price, s.count + 1};
  return {post_adjusted(next.sum / static_cast<double>(next.count), spec, band), next};
}

std::vector<double> run_bids(const StrategySpec& spec, std::span<const double> prices, const PriceBand& band) {
  spec.check(band);
  if (prices.empty()) throw DomainError("cannot run a strategy on an empty trace");

  std::vector<double> bids;
  bids.reserve(prices.size() + 1);
  StrategyState state = initial_state(spec, band, prices);
  bids.push_back(first_bid(spec, state, band));
  for (const double p : prices) {
    auto next = next_bid(spec, state, p, band);
    bids.push_back(next.bid);
    state = std::move(next.state);
  }
  return bids;
}

BidSeries run_strategy(const StrategySpec& spec, const PriceTrace& trace, const PriceBand& band) {
  const auto prices = trace.prices();
  return BidSeries{spec.name(), run_bids(spec, prices, band), spec};
}

}  // namespace spotbid
