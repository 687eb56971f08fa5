#include <doctest.h>

#include <cstring>
#include <random>

#include "spotbid/error.hpp"
#include "spotbid/metrics.hpp"
#include "support/oracles.hpp"

using namespace spotbid;

namespace {
const std::vector<double> kPrices{1.0, 2.0, 1.5};
const std::vector<double> kBids{1.0, 1.8, 1.6, 9.9};  // last one is the recommendation

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }
}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("success_rate") {
    CHECK(success_rate(kBids, kPrices) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(success_rate(std::vector<double>{2.6, 2.6, 2.6, 2.6}, kPrices) == 1.0);
    CHECK(success_rate(std::vector<double>{0.1, 0.1, 0.1, 9.0}, kPrices) == 0.0);
    CHECK_THROWS_WITH_AS(success_rate(std::vector<double>{1.0, 2.0, 1.5}, kPrices),
                         doctest::Contains("length mismatch"), DomainError);
  }

  TEST_CASE("ties count as in-bid") {
    CHECK(success_rate(std::vector<double>{1.0, 2.0, 1.5, 0.0}, kPrices) == 1.0);
  }

  TEST_CASE("distance") {
    CHECK(distance(kBids, kPrices) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(distance(std::vector<double>{1.0, 2.0, 1.5, 7.0}, kPrices) == 0.0);
    CHECK(distance(std::vector<double>{1.3, 0.0}, std::vector<double>{1.0}) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_THROWS_AS(distance(std::vector<double>{1.0}, std::vector<double>{}), DomainError);
  }

  TEST_CASE("relative_rationality") {
    const std::vector<NamedDistance> two{{"a", 0.3}, {"b", 0.6}};
    const auto rr = relative_rationality(std::span<const NamedDistance>(two));
    CHECK(rr[0] == NamedRationality{"a", 1.0});
    CHECK(rr[1].relative_rationality == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(relative_rationality(std::vector<double>{5.0}) == std::vector<double>{1.0});
    CHECK_THROWS_WITH_AS(relative_rationality(std::vector<double>{0.3, 0.0}),
                         doctest::Contains("zero distance violates rationality assumption"), DomainError);
    CHECK_THROWS_AS(relative_rationality(std::vector<double>{}), DomainError);
  }

  TEST_CASE("success rate is translation invariant") {
    std::mt19937_64 gen(21);
    std::uniform_int_distribution<int> cents(26, 260);
    for (int round = 0; round < 300; ++round) {
      const std::size_t n = 1 + gen() % 20;
      std::vector<double> prices(n), bids(n + 1);
      // Cent-grid values keep the shifted comparisons exact.
      for (auto& p : prices) p = cents(gen) / 100.0;
      for (auto& b : bids) b = cents(gen) / 100.0;
      auto shifted_p = prices, shifted_b = bids;
      for (auto& p : shifted_p) p += 0.5;
      for (auto& b : shifted_b) b += 0.5;
      CHECK(success_rate(bids, prices) == success_rate(shifted_b, shifted_p));
    }
  }

  TEST_CASE("distance is a metric on aligned series") {
    std::mt19937_64 gen(22);
    std::uniform_real_distribution<double> v(0.256, 2.6);
    for (int round = 0; round < 300; ++round) {
      const std::size_t n = 1 + gen() % 20;
      std::vector<double> x(n), y(n), z(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = v(gen), y[i] = v(gen), z[i] = v(gen);
      auto as_bids = [](std::vector<double> s) {
        s.push_back(0.0);
        return s;
      };
      const double dxy = distance(as_bids(x), y), dyx = distance(as_bids(y), x);
      CHECK(dxy >= 0.0);
      CHECK(dxy == dyx);
      CHECK(distance(as_bids(x), x) == 0.0);
      if (x != y) CHECK(dxy > 0.0);
      CHECK(distance(as_bids(x), z) <= dxy + distance(as_bids(y), z) + 1e-12);
    }
  }

  TEST_CASE("sr and d agree bitwise with the loop oracle") {
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> v(0.256, 2.6);
    for (int round = 0; round < 1000; ++round) {
      const std::size_t n = 1 + gen() % 12;
      std::vector<double> prices(n), bids(n + 1);
      for (auto& p : prices) p = v(gen);
      for (auto& b : bids) b = (gen() % 5 == 0) ? prices[gen() % n] : v(gen);
      CHECK(same_bits(success_rate(bids, prices), testing::success_rate_oracle(bids, prices)));
      CHECK(same_bits(distance(bids, prices), testing::distance_oracle(bids, prices)));
    }
  }

  TEST_CASE("rr maximum is exactly 1 and scale invariant") {
    std::mt19937_64 gen(24);
    std::uniform_real_distribution<double> d(1e-3, 1e3);
    std::uniform_real_distribution<double> c(1e-3, 1e3);
    for (int round = 0; round < 500; ++round) {
      std::vector<double> ds(1 + gen() % 10);
      for (auto& x : ds) x = d(gen);
      const auto rr = relative_rationality(ds);
      CHECK(*std::max_element(rr.begin(), rr.end()) == 1.0);
      for (double r : rr) CHECK((r > 0.0 && r <= 1.0));
      const double scale = c(gen);
      auto scaled = ds;
      for (auto& x : scaled) x *= scale;
      const auto rr2 = relative_rationality(scaled);
      for (std::size_t i = 0; i < rr.size(); ++i) CHECK(std::fabs(rr2[i] - rr[i]) <= 1e-12 * rr[i]);
    }
  }
}
