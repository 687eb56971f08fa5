#pragma once

#include <cmath>

namespace spotbid {

/// The interval of rational bids for one spot market: a reserve floor and
/// the on-demand ceiling, both in USD per hour. Always 0 < floor < ceiling.
class PriceBand {
 public:
  /// Throws DomainError unless 0 < floor < ceiling (both finite).
  PriceBand(double floor, double ceiling);

  double floor() const noexcept { return floor_; }
  double ceiling() const noexcept { return ceiling_; }
  double width() const noexcept { return ceiling_ - floor_; }
  double midpoint() const noexcept { return floor_ + width() / 2.0; }

  bool contains(double price) const noexcept { return price >= floor_ && price <= ceiling_; }
  bool contains_open(double price) const noexcept { return price > floor_ && price < ceiling_; }
  double clamp(double price) const noexcept;

  /// Half-width of the open proportional band (floor - ceiling, ceiling - floor)
  /// that every bid error lies in. Band edges are decimal prices, so the
  /// width is taken at nano-USD resolution: 2.600 - 0.256 gives exactly the
  /// double nearest 2.344 rather than 2.3440000000000003.
  double proportional_limit() const noexcept { return proportional_limit_; }

  bool proportional_band_contains(double error) const noexcept {
    return error > -proportional_limit_ && error < proportional_limit_;
  }

  friend bool operator==(const PriceBand&, const PriceBand&) = default;

 private:
  double floor_;
  double ceiling_;
  double proportional_limit_;
};

/// Dimensionless controller output fed into the band model.
struct ControlSignal {
  double value = 0.0;

  friend bool operator==(const ControlSignal&, const ControlSignal&) = default;
};

/// arccot on the continuous branch with range (0, pi): pi/2 at 0, falling
/// towards 0 as u -> +inf and rising towards pi as u -> -inf.
double arccot(double u);

/// Maps a control signal onto a bid via floor + (ceiling - floor) * arccot(u) / pi.
/// Strictly decreasing in u; u = 0 gives the band midpoint. Throws DomainError
/// for non-finite u. No clamping is applied: for |u| beyond ~1e16 the result
/// rounds onto the band edge.
double bid_from_control(ControlSignal u, const PriceBand& band);

/// Analytic inverse of bid_from_control. Throws DomainError unless
/// floor < bid < ceiling.
ControlSignal control_from_bid(double bid, const PriceBand& band);

}  // namespace spotbid
