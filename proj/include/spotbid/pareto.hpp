#pragma once

#include <span>
#include <vector>

namespace spotbid {

/// One candidate in the success-rate / distance trade-off. Higher
/// success_rate is better, lower distance is better.
struct Objective {
  double success_rate = 0.0;
  double distance = 0.0;
};

/// member[i] is true iff no j has sr_j >= sr_i and d_j <= d_i with at least
/// one strict. Exact floating-point comparisons; exact duplicates of a
/// frontier point are all members. O(n log n).
std::vector<bool> pareto_front(std::span<const Objective> points);

}  // namespace spotbid
