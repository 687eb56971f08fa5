#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spotbid/band_model.hpp"
#include "spotbid/time.hpp"

namespace spotbid {

struct PricePoint {
  Timestamp timestamp;
  double price = 0.0;  // USD per hour

  friend bool operator==(const PricePoint&, const PricePoint&) = default;
};

/// An ordered spot-price history for one market. Only traces that went
/// through validate() are guaranteed nonempty, strictly increasing in time
/// and strictly positive in price.
struct PriceTrace {
  std::vector<PricePoint> points;
  std::string instance_type;
  std::string product;
  std::string zone;

  std::size_t size() const noexcept { return points.size(); }
  std::vector<double> prices() const;

  friend bool operator==(const PriceTrace&, const PriceTrace&) = default;
};

struct TimeRange {
  Timestamp start;
  Timestamp end;  // inclusive
};

/// Record selection for AWS exports; every present field must match.
struct TraceFilter {
  std::optional<std::string> instance_type;
  std::optional<std::string> product;
  std::optional<std::string> zone;
  std::optional<TimeRange> time_range;
};

struct SynthConfig {
  PriceBand band;
  std::size_t n_points = 1;
  std::size_t hold_steps_mean = 1;
  double step_scale = 0.1;
  std::uint64_t seed = 0;
};

/// Parses `timestamp,price` CSV (header required, `\r\n` tolerated). Does not
/// validate ordering; see validate(). Throws ParseError with the 1-based line.
PriceTrace parse_csv(std::string_view raw);

/// Parses the JSON written by `ec2-describe-spot-price-history` /
/// `aws ec2 describe-spot-price-history`: an array of records, top-level or
/// under `SpotPriceHistory`. Keeps matching records, stable-sorted by time.
/// Metadata is taken from the filter, or from the records when they all agree.
PriceTrace parse_aws_json(std::string_view raw, const TraceFilter& filter);

/// Returns the trace if it is nonempty, strictly increasing in time and all
/// prices are > 0; throws ValidationError naming the offending indices.
PriceTrace validate(PriceTrace trace);

/// Inverse of parse_csv. Prices use the shortest text that parses back to the
/// same double, so parse_csv(to_csv(t)) reproduces every point exactly.
std::string to_csv(const PriceTrace& trace);

/// Piecewise-constant synthetic trace. Starting price is uniform in the band;
/// each subsequent step jumps with probability 1/hold_steps_mean (so hold
/// lengths are geometric with that mean) by a uniform amount in
/// [-step_scale, +step_scale], clamped into the band. Points are one minute
/// apart from kSynthEpoch. Uses SplitMix64 only, so the output is identical
/// across platforms for a given seed.
PriceTrace synth_step_hold(const SynthConfig& config);

/// 2015-05-03T00:00:00Z.
inline constexpr std::int64_t kSynthEpochSeconds = 1430611200;

}  // namespace spotbid
