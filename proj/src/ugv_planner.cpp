#include "cooproute/ugv_planner.hpp"

#include <algorithm>

#include "cooproute/errors.hpp"
#include "cooproute/tsp.hpp"

namespace cooproute {

std::vector<PointId> plan_spatial(const RefuelPlan& plan, const TravelMatrix& matrix) {
  if (plan.stops.empty()) throw InvalidArgument("refuel plan has no stops");
  TourInstance inst;
  inst.nodes = plan.stops;
  if (std::find(inst.nodes.begin(), inst.nodes.end(), kDepot) == inst.nodes.end()) {
    inst.nodes.push_back(kDepot);
  }
  inst.start = kDepot;
  inst.metric = &matrix;
  if (inst.nodes.size() <= kMaxExactTspNodes) return solve_tsp_exact(inst).order;
  // Beyond the subset-DP budget fall back to local search.
  return solve_tsp_heuristic(inst, 0).order;
}

UgvRoute start_route() {
  UgvRoute route;
  route.waypoints.push_back(Waypoint{kDepot, 0, 0, false});
  return route;
}

Seconds arrival_at_next_stop(const UgvRoute& route, PointId next,
                             const TravelMatrix& matrix, double ugv_speed) {
  if (route.waypoints.empty()) throw InvalidArgument("route has no waypoints");
  const Waypoint& last = route.waypoints.back();
  return last.departure + travel_time(matrix, last.point, next, ugv_speed);
}

UgvRoute append_waypoint(const UgvRoute& route, PointId next, bool refuel_stop,
                         const TravelMatrix& matrix, double ugv_speed) {
  UgvRoute out = route;
  const Seconds t = arrival_at_next_stop(route, next, matrix, ugv_speed);
  out.waypoints.push_back(Waypoint{next, t, t, refuel_stop});
  return out;
}

UgvRoute apply_rendezvous(const UgvRoute& route, PointId stop, Seconds uav_arrival,
                          Seconds recharge) {
  if (recharge < 0) throw InvalidArgument("negative recharge duration");
  auto rit = std::find_if(route.waypoints.rbegin(), route.waypoints.rend(),
                          [&](const Waypoint& w) { return w.point == stop && w.refuel_stop; });
  if (rit == route.waypoints.rend()) {
    throw InvalidArgument("stop " + std::to_string(stop) + " is not on the route");
  }
  const std::size_t k =
      static_cast<std::size_t>(std::distance(route.waypoints.begin(), rit.base()) - 1);
  const Waypoint& w = route.waypoints[k];
  if (uav_arrival < w.arrival) {
    throw ProtocolViolation("UAV reaches stop " + std::to_string(stop) + " at " +
                            std::to_string(uav_arrival) + " s, before the UGV at " +
                            std::to_string(w.arrival) + " s");
  }
  UgvRoute out = route;
  const Seconds departure = uav_arrival + recharge;
  const Seconds shift = departure - w.departure;
  out.waypoints[k].departure = departure;
  for (std::size_t i = k + 1; i < out.waypoints.size(); ++i) {
    out.waypoints[i].arrival += shift;
    out.waypoints[i].departure += shift;
  }
  out.waits.push_back(Rendezvous{stop, w.arrival, uav_arrival, recharge});
  return out;
}

Seconds total_wait(const UgvRoute& route) {
  Seconds total = 0;
  for (const Waypoint& w : route.waypoints) total += w.departure - w.arrival;
  return total;
}

Seconds driving_time(const UgvRoute& route) {
  Seconds total = 0;
  for (std::size_t i = 1; i < route.waypoints.size(); ++i) {
    total += route.waypoints[i].arrival - route.waypoints[i - 1].departure;
  }
  return total;
}

Meters driving_distance(const UgvRoute& route, const TravelMatrix& matrix) {
  Meters total = 0.0;
  for (std::size_t i = 1; i < route.waypoints.size(); ++i) {
    total += matrix.distance(route.waypoints[i - 1].point, route.waypoints[i].point);
  }
  return total;
}

}  // namespace cooproute
