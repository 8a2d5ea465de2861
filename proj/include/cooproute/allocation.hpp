#pragma once

#include <functional>
#include <vector>

#include "cooproute/model.hpp"
#include "cooproute/setcover.hpp"

namespace cooproute {

// Planning slice between consecutive refuel stops in tour order.
struct Subproblem {
  int index = 1;  // 1-based
  PointId origin = kDepot;
  PointId destination = kDepot;
  std::vector<PointId> uav_points;  // ascending
  Seconds window_open = 0;
  Seconds window_close = 0;

  bool operator==(const Subproblem&) const = default;
};

// One subproblem per tour leg, the last one returning to the depot. A
// point goes to the first stop after the depot, in tour order, that covers
// it; points only the depot covers go to the first subproblem.
std::vector<Subproblem> allocate(const RefuelPlan& plan,
                                 const std::vector<PointId>& tour_order,
                                 const TravelMatrix& matrix, Meters radius);

struct OverflowResult {
  Subproblem reduced;
  std::vector<PointId> ugv_leg;  // origin, inserted points..., destination
  std::vector<PointId> moved;    // in the order they left the UAV set
  bool uav_feasible = true;      // false: even the direct hop does not fit
};

using SortieFeasibility =
    std::function<bool(const Subproblem&, const std::vector<PointId>& ugv_leg)>;

// Moves points, farthest from the destination first, from the UAV set onto
// the UGV's origin-to-destination leg at their cheapest insertion position
// until `feasible` accepts the remaining sortie.
OverflowResult overflow_fallback(const Subproblem& sp, const TravelMatrix& matrix,
                                 const SortieFeasibility& feasible);

}  // namespace cooproute
