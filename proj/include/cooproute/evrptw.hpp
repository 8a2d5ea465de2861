#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cooproute/model.hpp"

namespace cooproute {

// One UAV sortie from S to D through every visit, with an availability
// window at D. Leg tables are over local indices: 0 = S, 1..m = visits,
// m + 1 = D.
struct EvrptwInstance {
  PointId start = kDepot;
  PointId destination = kDepot;
  std::vector<PointId> visits;
  std::vector<std::vector<Seconds>> leg_time;
  std::vector<std::vector<Joules>> leg_energy;
  Joules fuel_capacity = 0.0;
  Seconds window_open = 0;
  Seconds window_close = 0;
  Seconds earliest_departure = 0;

  std::size_t local_count() const { return visits.size() + 2; }
  PointId local_id(std::size_t k) const;
};

EvrptwInstance make_evrptw_instance(PointId start, PointId destination,
                                    std::vector<PointId> visits,
                                    const TravelMatrix& matrix, const VehicleSpec& uav,
                                    Seconds window_open, Seconds window_close,
                                    Seconds earliest_departure);

struct Sortie {
  std::vector<PointId> order;         // S, visits..., D
  std::vector<Seconds> node_times;
  std::vector<Joules> node_fuel;      // before any recharge at D
  Seconds departure = 0;
  Seconds arrival = 0;                // at D
  Seconds duration = 0;               // arrival - departure, pure flight time
  Seconds departure_delay = 0;        // hold at S so D is not reached early
  Joules energy = 0.0;

  Joules fuel_at_destination() const { return node_fuel.empty() ? 0.0 : node_fuel.back(); }
};

// Times and fuel along `local_order` (local indices, S first, D last),
// departing at `departure`. No feasibility checks.
Sortie trace_sortie(const EvrptwInstance& instance,
                    const std::vector<std::size_t>& local_order, Seconds departure);

// Recharge energy the UGV must supply at D; the tank is full afterwards.
Joules recharge_need(const Sortie& sortie, const EvrptwInstance& instance);

inline constexpr std::size_t kMaxExactVisits = 12;

// Minimum-flight-time sortie by depth-first branch-and-bound. Throws
// Infeasible when no order fits the fuel budget and window, and
// SizeLimitExceeded above kMaxExactVisits.
Sortie solve_exact(const EvrptwInstance& instance);

struct EvrptwHeuristicOptions {
  int restarts = 8;
};

// Cheapest feasible insertion, then 2-opt and relocation. Throws Infeasible
// when construction cannot place every visit.
Sortie solve_heuristic(const EvrptwInstance& instance, std::uint64_t seed,
                       const EvrptwHeuristicOptions& options = {});

// Exact up to kMaxExactVisits, heuristic beyond; nullopt when infeasible.
std::optional<Sortie> solve_sortie(const EvrptwInstance& instance, std::uint64_t seed);

enum class SortieConstraint {
  Structure,   // route must start at S, end at D and visit each point once
  Departure,   // no departure before the UAV is released
  Timing,      // t_j >= t_i + t_ij along the route
  Fuel,        // 0 <= fuel at every node
  Window,      // arrival at D inside [window_open, window_close]
  Bookkeeping  // recorded fuel or totals disagree with the recomputation
};

std::string_view to_string(SortieConstraint c);

struct SortieViolation {
  SortieConstraint constraint;
  PointId node;
  std::string detail;
};

struct SortieValidation {
  std::optional<SortieViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

SortieValidation validate_sortie(const Sortie& sortie, const EvrptwInstance& instance);

}  // namespace cooproute
