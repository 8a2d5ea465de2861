#pragma once

#include <vector>

#include "cooproute/model.hpp"
#include "cooproute/setcover.hpp"

namespace cooproute {

struct Waypoint {
  PointId point = kDepot;
  Seconds arrival = 0;
  Seconds departure = 0;
  bool refuel_stop = false;

  bool operator==(const Waypoint&) const = default;
};

struct Rendezvous {
  PointId stop = kDepot;
  Seconds ugv_arrival = 0;
  Seconds uav_arrival = 0;
  Seconds recharge = 0;

  // UGV idle time at the stop, recharge included.
  Seconds wait() const { return uav_arrival + recharge - ugv_arrival; }
  bool operator==(const Rendezvous&) const = default;
};

// Timed UGV route. Values are snapshots; every operation returns a new one.
struct UgvRoute {
  std::vector<Waypoint> waypoints;
  std::vector<Rendezvous> waits;

  Seconds finish() const { return waypoints.empty() ? 0 : waypoints.back().departure; }
};

// Closed tour over the refuel stops, rooted at the depot. The returned
// order starts at the depot and does not repeat it at the end.
std::vector<PointId> plan_spatial(const RefuelPlan& plan, const TravelMatrix& matrix);

// Route holding only the depot departure at t = 0.
UgvRoute start_route();

// Availability-window opening at `next`: previous departure plus the leg.
Seconds arrival_at_next_stop(const UgvRoute& route, PointId next,
                             const TravelMatrix& matrix, double ugv_speed);

UgvRoute append_waypoint(const UgvRoute& route, PointId next, bool refuel_stop,
                         const TravelMatrix& matrix, double ugv_speed);

// UGV holds at `stop` until the UAV has arrived and recharged; later
// waypoints shift by the added hold. Throws ProtocolViolation when the UAV
// would arrive before the UGV.
UgvRoute apply_rendezvous(const UgvRoute& route, PointId stop, Seconds uav_arrival,
                          Seconds recharge);

Seconds total_wait(const UgvRoute& route);

// Driving time only, as the sum of rounded leg times.
Seconds driving_time(const UgvRoute& route);

Meters driving_distance(const UgvRoute& route, const TravelMatrix& matrix);

}  // namespace cooproute
