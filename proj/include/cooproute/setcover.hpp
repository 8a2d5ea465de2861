#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "cooproute/model.hpp"

namespace cooproute {

struct CoverInstance {
  PointId depot = kDepot;
  std::vector<PointId> candidates;  // includes the depot
  std::vector<PointId> targets;
  Meters radius = 0.0;
  // cover_sets[k] lists the targets strictly within radius of candidates[k].
  std::vector<std::vector<PointId>> cover_sets;
};

// Stops are ordered with the depot first; assignment maps each target to
// the stop serving it.
struct RefuelPlan {
  std::vector<PointId> stops;
  std::map<PointId, PointId> assignment;

  // Refuel stops excluding the depot.
  std::size_t cardinality() const { return stops.empty() ? 0 : stops.size() - 1; }
  bool operator==(const RefuelPlan&) const = default;
};

// Throws Uncoverable listing every target no candidate reaches.
CoverInstance build_cover_instance(const Scenario& scenario,
                                   const TravelMatrix& matrix);

// Throws Uncoverable if the instance has an unreachable target.
void check_feasible(const CoverInstance& instance);

RefuelPlan greedy_cover(const CoverInstance& instance);

struct ExactCoverOptions {
  std::size_t max_solutions = 50;
  std::size_t node_limit = 2'000'000;
};

inline constexpr std::size_t kMaxExactCandidates = 128;

struct ExactCoverResult {
  std::vector<RefuelPlan> plans;  // sorted lexicographically by stops
  bool incomplete = false;        // node limit hit; plans are best-known
  std::size_t nodes = 0;
};

// Every minimum-cardinality cover up to max_solutions. The depot is always
// a stop and does not count toward the objective.
ExactCoverResult exact_min_covers(const CoverInstance& instance,
                                  const ExactCoverOptions& options = {});

// True when every target is assigned to a stop of the plan that covers it.
bool plan_is_valid(const RefuelPlan& plan, const CoverInstance& instance);

}  // namespace cooproute
