#pragma once

#include "spotbid/band_model.hpp"

namespace spotbid {

/// Proportional and integral gains of the bidding PI controller.
///
/// Corrective control needs both gains negative: a bid below the spot price
/// (positive error) must push u down, which raises the bid. Configuration
/// layers take positive magnitudes and negate them via from_magnitudes().
class PiGains {
 public:
  /// Throws DomainError unless kp < 0 and ki < 0 (both finite).
  PiGains(double kp, double ki);

  /// kp = -kp_magnitude, ki = -ki_magnitude; magnitudes must be > 0.
  static PiGains from_magnitudes(double kp_magnitude, double ki_magnitude);

  /// Takes the gains as written, any finite sign. Only for exploring the
  /// positive-gain reading; such gains drive bids away from the price.
  static PiGains literal(double kp, double ki);

  double kp() const noexcept { return kp_; }
  double ki() const noexcept { return ki_; }
  bool corrective() const noexcept { return kp_ < 0.0 && ki_ < 0.0; }

  friend bool operator==(const PiGains&, const PiGains&) = default;

 private:
  struct Unchecked {};
  PiGains(double kp, double ki, Unchecked) : kp_(kp), ki_(ki) {}

  double kp_;
  double ki_;
};

/// Running state of the controller: plain sequential sum of every error
/// seen so far, plus the latest error for reporting.
struct ControllerState {
  double error_sum = 0.0;
  double last_error = 0.0;

  friend bool operator==(const ControllerState&, const ControllerState&) = default;
};

struct ControllerStep {
  ControlSignal u;
  ControllerState state;
};

/// One controller update. The error is accumulated first, then
/// u = kp * error + ki * (error_sum + error).
///
/// Throws DomainError if error is non-finite or not strictly inside the
/// proportional band (floor - ceiling, ceiling - floor).
ControllerStep step(const ControllerState& state, double error, const PiGains& gains,
                    const PriceBand& band);

ControllerState reset(const ControllerState& state) noexcept;

}  // namespace spotbid
