#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "spotbid/band_model.hpp"
#include "spotbid/controller.hpp"
#include "spotbid/error.hpp"
#include "support/oracles.hpp"

using namespace spotbid;

namespace {
const PriceBand kBand(0.256, 2.600);
}

TEST_SUITE("band_model") {
  TEST_CASE("band validation") {
    CHECK_THROWS_AS(PriceBand(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(PriceBand(1.0, 1.0), DomainError);
    CHECK_THROWS_AS(PriceBand(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(PriceBand(0.1, std::numeric_limits<double>::infinity()), DomainError);
    CHECK(kBand.proportional_limit() == 2.344);
  }

  TEST_CASE("bid_from_control at the quarter points") {
    CHECK(bid_from_control({0.0}, kBand) == doctest::Approx(1.428).epsilon(1e-12));
    CHECK(bid_from_control({1.0}, kBand) == doctest::Approx(0.842).epsilon(1e-12));
    CHECK(bid_from_control({-1.0}, kBand) == doctest::Approx(2.014).epsilon(1e-12));
  }

  TEST_CASE("midpoint within one ulp") {
    for (const auto& band : {kBand, PriceBand(0.1, 0.3), PriceBand(1e-3, 7.77), PriceBand(3.0, 3.5)}) {
      const double mid = (band.floor() + band.ceiling()) / 2.0;
      const double got = bid_from_control({0.0}, band);
      CHECK(std::fabs(got - mid) <= std::nextafter(mid, 1e300) - mid);
    }
  }

  TEST_CASE("asymptotes") {
    const double low = bid_from_control({1e6}, kBand);
    CHECK(low > 0.256);
    CHECK(low - 0.256 < 1e-4);
    const double high = bid_from_control({-1e6}, kBand);
    CHECK(high < 2.600);
    CHECK(2.600 - high < 1e-4);
    CHECK_THROWS_AS(bid_from_control({std::numeric_limits<double>::quiet_NaN()}, kBand), DomainError);
    CHECK_THROWS_AS(bid_from_control({std::numeric_limits<double>::infinity()}, kBand), DomainError);
  }

  TEST_CASE("arccot branch agrees with atan2(1, u)") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> exponent(-6.0, 6.0);
    for (int i = 0; i < 2000; ++i) {
      const double u = (gen() & 1 ? 1.0 : -1.0) * std::pow(10.0, exponent(gen));
      CHECK(arccot(u) == doctest::Approx(std::atan2(1.0, u)).epsilon(1e-14));
    }
  }

  TEST_CASE("control_from_bid inverts the band model") {
    CHECK(std::fabs(control_from_bid(1.428, kBand).value) < 1e-9);
    CHECK(control_from_bid(0.842, kBand).value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_WITH_AS(control_from_bid(2.600, kBand), doctest::Contains("bid on/outside band"), DomainError);
    CHECK_THROWS_AS(control_from_bid(0.256, kBand), DomainError);
    CHECK_THROWS_AS(control_from_bid(3.0, kBand), DomainError);
  }

  TEST_CASE("range, monotonicity and round trip on random samples") {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> exponent(-8.0, 6.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 5000; ++i) {
      const double u1 = (gen() & 1 ? 1.0 : -1.0) * std::pow(10.0, exponent(gen));
      const double u2 = (gen() & 1 ? 1.0 : -1.0) * std::pow(10.0, exponent(gen));
      const double y1 = bid_from_control({u1}, kBand);
      const double y2 = bid_from_control({u2}, kBand);
      CHECK(kBand.contains_open(y1));
      if (u1 < u2) CHECK(y1 > y2);
      if (u1 > u2) CHECK(y1 < y2);

      const double bid = 0.256 + 2.344 * (1e-6 + (1.0 - 2e-6) * unit(gen));
      const double back = bid_from_control(control_from_bid(bid, kBand), kBand);
      CHECK(std::fabs(back - bid) <= 1e-9 * bid);
    }
  }
}

TEST_SUITE("controller") {
  const auto gains = PiGains::from_magnitudes(10.0, 10.0);

  TEST_CASE("gain construction") {
    CHECK(gains.kp() == -10.0);
    CHECK(gains.ki() == -10.0);
    CHECK(gains.corrective());
    CHECK_THROWS_AS(PiGains(10.0, -10.0), DomainError);
    CHECK_THROWS_AS(PiGains(-10.0, 0.0), DomainError);
    CHECK_THROWS_AS(PiGains::from_magnitudes(-1.0, 1.0), DomainError);
    CHECK_FALSE(PiGains::literal(10.0, 10.0).corrective());
    CHECK_THROWS_AS(PiGains::literal(std::nan(""), 1.0), DomainError);
  }

  TEST_CASE("step examples") {
    auto r = step({}, 0.0, gains, kBand);
    CHECK(r.u.value == 0.0);
    CHECK(r.state.error_sum == 0.0);

    r = step({}, 0.1, gains, kBand);
    CHECK(r.u.value == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(r.state.error_sum == 0.1);
    CHECK(r.state.last_error == 0.1);

    r = step({0.5, 0.0}, 0.0, gains, kBand);
    CHECK(r.u.value == -5.0);
  }

  TEST_CASE("proportional band is open") {
    CHECK_THROWS_WITH_AS(step({}, 2.344, gains, kBand), doctest::Contains("outside proportional band"),
                         DomainError);
    CHECK_THROWS_AS(step({}, -2.344, gains, kBand), DomainError);
    CHECK_NOTHROW(step({}, std::nextafter(2.344, 0.0), gains, kBand));
    CHECK_NOTHROW(step({}, std::nextafter(-2.344, 0.0), gains, kBand));
    CHECK_THROWS_AS(step({}, std::nan(""), gains, kBand), DomainError);
    CHECK_THROWS_AS(step({std::numeric_limits<double>::infinity(), 0.0}, 0.1, gains, kBand), DomainError);
  }

  TEST_CASE("reset") {
    const ControllerState dirty{3.5, -0.2};
    CHECK(reset(dirty) == ControllerState{});
    CHECK(reset(reset(dirty)) == reset(dirty));
    CHECK(step(reset(dirty), 0.37, gains, kBand).u == step({}, 0.37, gains, kBand).u);
  }

  TEST_CASE("sign property from a fresh state") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> err(-2.3, 2.3);
    for (int i = 0; i < 1000; ++i) {
      const double e = err(gen);
      if (e == 0.0) continue;
      const auto u = step({}, e, gains, kBand).u;
      const double bid = bid_from_control(u, kBand);
      if (e > 0) {
        CHECK(u.value < 0.0);
        CHECK(bid > kBand.midpoint());
      } else {
        CHECK(u.value > 0.0);
        CHECK(bid < kBand.midpoint());
      }
    }
  }

  TEST_CASE("linearity in (error, error_sum)") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> err(-1.0, 1.0);
    std::uniform_real_distribution<double> scale(-2.0, 2.0);
    const auto g = PiGains::from_magnitudes(3.7, 0.9);
    for (int i = 0; i < 1000; ++i) {
      const double e = err(gen), s = 10.0 * err(gen), a = scale(gen);
      const double base = step({s, 0.0}, e, g, kBand).u.value;
      const double scaled = step({a * s, 0.0}, a * e, g, kBand).u.value;
      CHECK(scaled == doctest::Approx(a * base).epsilon(1e-12));
    }
  }

  TEST_CASE("error_sum matches a compensated sum") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> err(-2.3, 2.3);
    ControllerState state;
    std::vector<double> errors;
    double abs_sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
      const double e = err(gen);
      errors.push_back(e);
      abs_sum += std::fabs(e);
      state = step(state, e, gains, kBand).state;
    }
    CHECK(std::fabs(state.error_sum - testing::compensated_sum(errors)) <= 1e-12 * abs_sum);
  }
}
