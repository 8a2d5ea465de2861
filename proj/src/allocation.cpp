#include "cooproute/allocation.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "cooproute/errors.hpp"

namespace cooproute {

std::vector<Subproblem> allocate(const RefuelPlan& plan,
                                 const std::vector<PointId>& tour_order,
                                 const TravelMatrix& matrix, Meters radius) {
  if (tour_order.empty() || tour_order.front() != kDepot) {
    throw InvalidArgument("tour order must begin at the depot");
  }
  if (std::set<PointId>(tour_order.begin(), tour_order.end()) !=
      std::set<PointId>(plan.stops.begin(), plan.stops.end())) {
    throw InvalidArgument("tour order does not match the refuel plan's stops");
  }

  std::vector<Subproblem> sps;
  const std::size_t r = tour_order.size();
  for (std::size_t i = 1; i <= std::max<std::size_t>(r, 1); ++i) {
    Subproblem sp;
    sp.index = static_cast<int>(i);
    sp.origin = tour_order[i - 1];
    sp.destination = i < r ? tour_order[i] : kDepot;
    sps.push_back(sp);
  }

  for (std::size_t p = 1; p < matrix.size(); ++p) {
    const auto point = static_cast<PointId>(p);
    std::size_t slot = sps.size();
    for (std::size_t i = 1; i < r; ++i) {
      if (matrix.distance(tour_order[i], point) < radius) {
        slot = i - 1;
        break;
      }
    }
    if (slot == sps.size()) {
      if (matrix.distance(kDepot, point) < radius) {
        slot = 0;
      } else {
        throw UnassignedPoint(point);
      }
    }
    sps[slot].uav_points.push_back(point);
  }
  return sps;
}

OverflowResult overflow_fallback(const Subproblem& sp, const TravelMatrix& matrix,
                                 const SortieFeasibility& feasible) {
  OverflowResult out;
  out.reduced = sp;
  out.ugv_leg = {sp.origin, sp.destination};
  while (!feasible(out.reduced, out.ugv_leg)) {
    auto& pts = out.reduced.uav_points;
    if (pts.empty()) {
      out.uav_feasible = false;
      return out;
    }
    auto far = pts.begin();
    for (auto it = pts.begin(); it != pts.end(); ++it) {
      if (matrix.distance(*it, sp.destination) > matrix.distance(*far, sp.destination)) far = it;
    }
    const PointId moving = *far;
    pts.erase(far);

    std::size_t best_pos = 1;
    double best_delta = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < out.ugv_leg.size(); ++k) {
      const PointId a = out.ugv_leg[k - 1], b = out.ugv_leg[k];
      const double delta = matrix.distance(a, moving) + matrix.distance(moving, b) -
                           matrix.distance(a, b);
      if (delta < best_delta - 1e-9) {
        best_delta = delta;
        best_pos = k;
      }
    }
    out.ugv_leg.insert(out.ugv_leg.begin() + static_cast<std::ptrdiff_t>(best_pos), moving);
    out.moved.push_back(moving);
  }
  return out;
}

}  // namespace cooproute
