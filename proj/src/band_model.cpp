#include "spotbid/band_model.hpp"

#include <algorithm>
#include <numbers>

#include <fmt/format.h>

#include "spotbid/error.hpp"

namespace spotbid {

PriceBand::PriceBand(double floor, double ceiling)
    : floor_(floor), ceiling_(ceiling), proportional_limit_(ceiling - floor) {
  if (!std::isfinite(floor) || !std::isfinite(ceiling) || !(floor > 0.0) || !(floor < ceiling)) {
    throw DomainError(fmt::format("invalid price band: need 0 < floor < ceiling, got floor={} ceiling={}",
                                  floor, ceiling));
  }
  const double rounded = std::round(proportional_limit_ * 1e9) / 1e9;
  if (rounded > 0.0) proportional_limit_ = rounded;
}

double PriceBand::clamp(double price) const noexcept { return std::clamp(price, floor_, ceiling_); }

double arccot(double u) {
  // atan(1/u) keeps full relative precision in the tails where pi/2 - atan(u)
  // would cancel.
  constexpr double pi = std::numbers::pi;
  if (u > 1.0) return std::atan(1.0 / u);
  if (u < -1.0) return pi + std::atan(1.0 / u);
  return pi / 2.0 - std::atan(u);
}

double bid_from_control(ControlSignal u, const PriceBand& band) {
  if (!std::isfinite(u.value)) {
    throw DomainError(fmt::format("control signal must be finite, got {}", u.value));
  }
  return band.floor() + band.width() * (arccot(u.value) / std::numbers::pi);
}

ControlSignal control_from_bid(double bid, const PriceBand& band) {
  if (!std::isfinite(bid) || !band.contains_open(bid)) {
    throw DomainError(fmt::format("bid on/outside band: {} not in ({}, {})", bid, band.floor(),
                                  band.ceiling()));
  }
  // theta in (0, pi); u = cot(theta) = tan(pi/2 - theta).
  const double theta = std::numbers::pi * ((bid - band.floor()) / band.width());
  return ControlSignal{std::tan(std::numbers::pi / 2.0 - theta)};
}

}  // namespace spotbid
