#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spotbid/band_model.hpp"
#include "spotbid/controller.hpp"
#include "spotbid/trace.hpp"

namespace spotbid {

enum class StrategyKind { Feedback, Minimum, Mean, High, Current, OnDemand };

/// Lowercase CLI/report name: feedback, minimum, mean, high, current, ondemand.
std::string_view to_string(StrategyKind kind) noexcept;
std::optional<StrategyKind> parse_strategy_kind(std::string_view name) noexcept;

/// Whether Minimum/Mean/High look only at prices already observed (Causal)
/// or at the whole evaluation trace up front (FullTrace).
enum class StatMode { Causal, FullTrace };

std::string_view to_string(StatMode mode) noexcept;
std::optional<StatMode> parse_stat_mode(std::string_view name) noexcept;

/// Bias applied before the controller (pre) and to every emitted bid (post), USD.
struct Adjustments {
  double pre_delta = 0.0;
  double post_delta = 0.0;

  friend bool operator==(const Adjustments&, const Adjustments&) = default;
};

/// A configured strategy. Build through the factories; check() enforces the
/// remaining band-dependent invariant on initial_bid.
struct StrategySpec {
  StrategyKind kind = StrategyKind::Current;
  std::optional<PiGains> gains;        // Feedback only
  Adjustments adjustments;
  double initial_bid = 0.0;            // bid_1, placed before any price is seen
  std::optional<StatMode> stat_mode;   // Minimum/Mean/High only

  static StrategySpec feedback(PiGains gains, double initial_bid, Adjustments adjustments = {});
  static StrategySpec statistic(StrategyKind kind, StatMode mode, double initial_bid,
                                Adjustments adjustments = {});
  static StrategySpec current(double initial_bid, Adjustments adjustments = {});
  static StrategySpec on_demand(double initial_bid);

  std::string name() const { return std::string(to_string(kind)); }

  /// Throws DomainError if any invariant fails for `band`.
  void check(const PriceBand& band) const;

  friend bool operator==(const StrategySpec&, const StrategySpec&) = default;
};

/// Half the on-demand price. May fall below the floor for narrow bands, in
/// which case StrategySpec::check rejects it and the caller must pick a bid.
double initial_bid_default(const PriceBand& band) noexcept;

struct FeedbackState {
  ControllerState controller;
  double previous_bid = 0.0;  // controller output before post-adjustment
};
struct RunningMinState {
  std::optional<double> min;
};
struct RunningMeanState {
  double sum = 0.0;
  std::size_t count = 0;
};
struct RunningMaxState {
  std::optional<double> max;
};
struct FixedBidState {
  double bid = 0.0;
};
struct CurrentState {
  std::optional<double> last_price;
};
struct OnDemandState {};

using StrategyState = std::variant<FeedbackState, RunningMinState, RunningMeanState, RunningMaxState,
                                   FixedBidState, CurrentState, OnDemandState>;

/// State before the first price is observed. FullTrace statistics are
/// computed here from `trace_prices`, which other kinds ignore.
StrategyState initial_state(const StrategySpec& spec, const PriceBand& band,
                            std::span<const double> trace_prices);

/// bid_1 for a fresh state: initial_bid, except the constant strategies
/// (OnDemand, FullTrace statistics) which bid their constant from the start.
double first_bid(const StrategySpec& spec, const StrategyState& state, const PriceBand& band);

struct BidStep {
  double bid = 0.0;
  StrategyState state;
};

/// Observes one spot price and produces the bid that stands for the next one.
/// Throws DomainError on a non-finite or nonpositive price, on a state that
/// does not belong to `spec`, or when the controller rejects the error.
BidStep next_bid(const StrategySpec& spec, const StrategyState& state, double observed_price,
                 const PriceBand& band);

/// bids[i] stands while price i is live (0-based); the last bid has no
/// realized price and is only a recommendation for the next round.
struct BidSeries {
  std::string strategy_name;
  std::vector<double> bids;
  StrategySpec spec;

  /// Bids paired with trace prices (all but the recommendation).
  std::span<const double> scored() const noexcept {
    return std::span<const double>(bids).first(bids.empty() ? 0 : bids.size() - 1);
  }
  double recommendation() const { return bids.back(); }
};

/// Replays the trace, producing trace.size() + 1 bids.
BidSeries run_strategy(const StrategySpec& spec, const PriceTrace& trace, const PriceBand& band);

/// Same as run_strategy over a bare price vector.
std::vector<double> run_bids(const StrategySpec& spec, std::span<const double> prices, const PriceBand& band);

}  // namespace spotbid
