#include "spotbid/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "spotbid/error.hpp"

namespace spotbid {
namespace {

void check_aligned(std::span<const double> bids, std::span<const double> prices) {
  if (prices.empty() || bids.size() != prices.size() + 1) {
    throw DomainError(fmt::format("length mismatch: {} bids for {} prices (expected prices + 1)", bids.size(),
                                  prices.size()));
  }
}

}  // namespace

double success_rate(std::span<const double> bids, std::span<const double> prices) {
  check_aligned(bids, prices);
  std::size_t in_bid = 0;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (bids[i] >= prices[i]) ++in_bid;
  }
  return static_cast<double>(in_bid) / static_cast<double>(prices.size());
}

double success_rate(const BidSeries& bids, const PriceTrace& trace) {
  return success_rate(bids.bids, trace.prices());
}

double distance(std::span<const double> bids, std::span<const double> prices) {
  check_aligned(bids, prices);
  double d = 0.0;
  for (std::size_t i = 0; i < prices.size(); ++i) d += std::abs(bids[i] - prices[i]);
  return d;
}

double distance(const BidSeries& bids, const PriceTrace& trace) { return distance(bids.bids, trace.prices()); }

MetricsSummary summarize(const BidSeries& bids, const PriceTrace& trace) {
  const auto prices = trace.prices();
  return {success_rate(bids.bids, prices), distance(bids.bids, prices), std::nullopt};
}

std::vector<double> relative_rationality(std::span<const double> distances) {
  if (distances.empty()) throw DomainError("relative rationality needs at least one strategy");
  for (const double d : distances) {
    if (!std::isfinite(d) || !(d > 0.0)) {
      throw DomainError(fmt::format(
          "zero distance violates rationality assumption (no bidder tracks the spot price exactly), got d={}",
          d));
    }
  }
  const double best = *std::min_element(distances.begin(), distances.end());
  std::vector<double> rr;
  rr.reserve(distances.size());
  for (const double d : distances) rr.push_back(d == best ? 1.0 : best / d);
  return rr;
}

std::vector<NamedRationality> relative_rationality(std::span<const NamedDistance> distances) {
  std::vector<double> d;
  d.reserve(distances.size());
  for (const auto& nd : distances) d.push_back(nd.distance);
  const auto rr = relative_rationality(std::span<const double>(d));
  std::vector<NamedRationality> out;
  out.reserve(rr.size());
  for (std::size_t i = 0; i < rr.size(); ++i) out.push_back({distances[i].name, rr[i]});
  return out;
}

}  // namespace spotbid
