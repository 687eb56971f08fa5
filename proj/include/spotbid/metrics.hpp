#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spotbid/strategies.hpp"
#include "spotbid/trace.hpp"

namespace spotbid {

struct MetricsSummary {
  double success_rate = 0.0;  // fraction in [0, 1]
  double distance = 0.0;      // USD
  std::optional<double> relative_rationality;  // set only within a comparison set
};

struct NamedDistance {
  std::string name;
  double distance = 0.0;
};

struct NamedRationality {
  std::string name;
  double relative_rationality = 0.0;

  friend bool operator==(const NamedRationality&, const NamedRationality&) = default;
};

/// Fraction of i in [0, t) with bids[i] >= prices[i]. `bids` must hold
/// t + 1 entries; the trailing recommendation is never scored.
double success_rate(std::span<const double> bids, std::span<const double> prices);
double success_rate(const BidSeries& bids, const PriceTrace& trace);

/// Sum of |bids[i] - prices[i]| for i in [0, t), accumulated in index order.
double distance(std::span<const double> bids, std::span<const double> prices);
double distance(const BidSeries& bids, const PriceTrace& trace);

MetricsSummary summarize(const BidSeries& bids, const PriceTrace& trace);

/// rr_j = min_i d_i / d_j over the given set. Every distance must be > 0:
/// a zero-distance bidder would need perfect foresight of the spot price.
/// Throws DomainError on an empty set or a zero/negative/non-finite distance.
std::vector<NamedRationality> relative_rationality(std::span<const NamedDistance> distances);

/// Same computation over bare distances, in input order.
std::vector<double> relative_rationality(std::span<const double> distances);

}  // namespace spotbid
