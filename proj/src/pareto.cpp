#include "spotbid/pareto.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace spotbid {

std::vector<bool> pareto_front(std::span<const Objective> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].success_rate != points[b].success_rate) {
      return points[a].success_rate > points[b].success_rate;
    }
    return points[a].distance < points[b].distance;
  });

  std::vector<bool> member(points.size(), false);
  // Smallest distance among points with strictly higher success rate.
  double best_higher = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    const double sr = points[order[i]].success_rate;
    while (j < order.size() && points[order[j]].success_rate == sr) ++j;
    // Sorted by distance within the group, so order[i] holds the group minimum.
    const double group_min = points[order[i]].distance;
    for (std::size_t k = i; k < j; ++k) {
      const double d = points[order[k]].distance;
      member[order[k]] = d == group_min && best_higher > d;
    }
    best_higher = std::min(best_higher, group_min);
    i = j;
  }
  return member;
}

}  // namespace spotbid
