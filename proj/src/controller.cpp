#include "spotbid/controller.hpp"

#include <cmath>

#include <fmt/format.h>

#include "spotbid/error.hpp"

namespace spotbid {

PiGains::PiGains(double kp, double ki) : kp_(kp), ki_(ki) {
  if (!std::isfinite(kp) || !std::isfinite(ki) || !(kp < 0.0) || !(ki < 0.0)) {
    throw DomainError(fmt::format("PI gains must be negative, got kp={} ki={}", kp, ki));
  }
}

PiGains PiGains::from_magnitudes(double kp_magnitude, double ki_magnitude) {
  if (!std::isfinite(kp_magnitude) || !std::isfinite(ki_magnitude) || !(kp_magnitude > 0.0) ||
      !(ki_magnitude > 0.0)) {
    throw DomainError(fmt::format("gain magnitudes must be positive, got kp={} ki={}", kp_magnitude,
                                  ki_magnitude));
  }
  return PiGains(-kp_magnitude, -ki_magnitude);
}

PiGains PiGains::literal(double kp, double ki) {
  if (!std::isfinite(kp) || !std::isfinite(ki)) {
    throw DomainError(fmt::format("PI gains must be finite, got kp={} ki={}", kp, ki));
  }
  return PiGains(kp, ki, Unchecked{});
}

ControllerStep step(const ControllerState& state, double error, const PiGains& gains,
                    const PriceBand& band) {
  if (!std::isfinite(error) || !std::isfinite(state.error_sum)) {
    throw DomainError(fmt::format("non-finite controller input: error={} error_sum={}", error,
                                  state.error_sum));
  }
  if (!band.proportional_band_contains(error)) {
    throw DomainError(fmt::format("error {} outside proportional band ({}, {})", error, -band.proportional_limit(),
                                  band.proportional_limit()));
  }
  ControllerState next{state.error_sum + error, error};
  const double u = gains.kp() * error + gains.ki() * next.error_sum;
  return {ControlSignal{u}, next};
}

ControllerState reset(const ControllerState&) noexcept { return ControllerState{}; }

}  // namespace spotbid
