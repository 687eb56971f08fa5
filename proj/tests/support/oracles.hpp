#pragma once

// Test-only reference implementations. None of these call into the library's
// model code, so they stay independent of the paths they check.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace spotbid::testing {

/// Feedback loop written out straight, with arccot(u) = atan2(1, u).
/// `alternate` switches to pi/2 - atan(u): equal in exact arithmetic, so the
/// two only disagree where the loop amplifies rounding.
inline std::vector<double> feedback_oracle(const std::vector<double>& prices, double floor, double ceiling,
                                           double kp, double ki, double bid1, double pre = 0.0,
                                           double post = 0.0, bool alternate = false) {
  std::vector<double> bids{bid1};
  double bid = bid1;
  double e_sum = 0.0;
  for (const double p : prices) {
    const double e = (p + pre) - bid;
    e_sum += e;
    const double u = kp * e + ki * e_sum;
    const double angle = alternate ? std::numbers::pi / 2 - std::atan(u) : std::atan2(1.0, u);
    bid = floor + (ceiling - floor) * angle / std::numbers::pi;
    bids.push_back(std::fmin(std::fmax(bid + post, floor), ceiling));
  }
  return bids;
}

inline double success_rate_oracle(const std::vector<double>& bids, const std::vector<double>& prices) {
  int hits = 0;
  for (std::size_t i = 0; i < prices.size(); ++i) hits += bids[i] >= prices[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(prices.size());
}

inline double distance_oracle(const std::vector<double>& bids, const std::vector<double>& prices) {
  double d = 0.0;
  for (std::size_t i = 0; i < prices.size(); ++i) d += std::fabs(bids[i] - prices[i]);
  return d;
}

/// O(n^2) domination check over (higher sr, lower d).
inline std::vector<bool> pareto_oracle(const std::vector<double>& sr, const std::vector<double>& d) {
  std::vector<bool> member(sr.size(), true);
  for (std::size_t i = 0; i < sr.size(); ++i) {
    for (std::size_t j = 0; j < sr.size(); ++j) {
      const bool weakly = sr[j] >= sr[i] && d[j] <= d[i];
      const bool strictly = sr[j] > sr[i] || d[j] < d[i];
      if (weakly && strictly) member[i] = false;
    }
  }
  return member;
}

/// Neumaier compensated sum.
inline double compensated_sum(const std::vector<double>& xs) {
  double sum = 0.0;
  double c = 0.0;
  for (const double x : xs) {
    const double t = sum + x;
    c += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

}  // namespace spotbid::testing
