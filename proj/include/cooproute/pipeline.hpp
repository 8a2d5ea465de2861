#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cooproute/allocation.hpp"
#include "cooproute/evrptw.hpp"
#include "cooproute/model.hpp"
#include "cooproute/setcover.hpp"
#include "cooproute/ugv_planner.hpp"

namespace cooproute {

enum class Method { Greedy, Exact, Baseline };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view token);

// Outcome of one subproblem: the UAV sortie (or a carried transit when not
// even the direct hop fits one charge) and the UGV's leg.
struct LegPlan {
  Subproblem subproblem;
  std::vector<PointId> ugv_path;  // origin, detour points..., destination
  std::vector<PointId> moved;     // points handed to the UGV by the fallback
  std::optional<Sortie> sortie;
  bool carried = false;           // UAV rides the UGV over this leg
  Seconds uav_release = 0;
  Seconds uav_arrival = 0;
  Seconds recharge = 0;           // 0 on the final leg
};

struct StageTimings {
  double cover_ms = 0.0;
  double tsp_ms = 0.0;
  double evrptw_ms = 0.0;
  double total_ms = 0.0;
};

struct CooperativePlan {
  Method method = Method::Greedy;
  RefuelPlan cover;
  std::vector<PointId> stop_tour;    // UGV tour over the stops, depot first
  UgvRoute ugv;
  std::vector<LegPlan> legs;         // empty for the baseline
  std::vector<PointId> baseline_tour;
  Seconds task_time = 0;
  Joules uav_energy = 0.0;
  Joules ugv_energy = 0.0;
  Joules total_energy = 0.0;
  bool overflow = false;
  int carried_legs = 0;
  bool cover_incomplete = false;
  std::size_t covers_evaluated = 0;
  StageTimings timings;              // wall clock; never serialized with the plan
};

struct PipelineOptions {
  ExactCoverOptions cover;
  std::uint64_t seed = 0;
  // Latest admissible UAV arrival at any stop. Defaults to ten times the
  // UGV-only tour time.
  std::optional<Seconds> horizon;
};

inline constexpr Seconds kHorizonMultiplier = 10;

CooperativePlan run_cooperative(const Scenario& scenario, Method method,
                                const PipelineOptions& options = {});

// Runs the sequential UGV/UAV feedback for one fixed refuel plan.
CooperativePlan plan_for_cover(const Scenario& scenario, const TravelMatrix& matrix,
                               const RefuelPlan& cover, Seconds horizon,
                               std::uint64_t seed);

CooperativePlan run_baseline(const Scenario& scenario, std::uint64_t seed = 0);

struct EnergyBreakdown {
  Joules uav = 0.0;
  Joules ugv = 0.0;
  Joules total = 0.0;
};

// UAV flight draw plus UGV driving draw and idle draw while waiting.
EnergyBreakdown energy_accounting(const CooperativePlan& plan, const Scenario& scenario,
                                  const TravelMatrix& matrix);

// (baseline - value) / baseline * 100. Throws InvalidArgument if the
// baseline is not positive.
double improvement_pct(double baseline, double value);

struct Improvement {
  double time_pct = 0.0;
  double energy_pct = 0.0;
};

Improvement compute_metrics(const CooperativePlan& plan, const CooperativePlan& baseline);

// Re-derives completeness, fuel safety, rendezvous consistency and the
// stored metrics from the raw routes.
struct PlanCheck {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

PlanCheck verify_plan(const CooperativePlan& plan, const Scenario& scenario,
                      const TravelMatrix& matrix);

}  // namespace cooproute
