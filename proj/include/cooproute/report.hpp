#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cooproute/pipeline.hpp"

namespace cooproute {

inline constexpr int kReportSchemaVersion = 1;

struct MethodOutcome {
  Method method = Method::Greedy;
  std::optional<CooperativePlan> plan;
  std::optional<Improvement> improvement;  // empty when the baseline has zero length
  std::string status = "ok";               // otherwise "<kind>: <message>"
  double wall_ms = 0.0;

  bool ok() const { return status == "ok"; }
};

// Every requested method solved against one scenario, with the UGV-only
// baseline as the reference for improvements.
struct PlanReport {
  Scenario scenario;
  Seconds horizon = 0;
  CooperativePlan baseline;
  double baseline_wall_ms = 0.0;
  std::vector<MethodOutcome> outcomes;  // requested order

  bool feasible() const;
};

// Planning failures and failed plan checks are recorded per outcome and
// never thrown.
PlanReport solve_report(const Scenario& scenario, const std::vector<Method>& methods,
                        std::uint64_t seed = 0);

nlohmann::ordered_json plan_to_json(const CooperativePlan& plan);

// Deterministic document: no wall-clock values.
nlohmann::ordered_json report_to_json(const PlanReport& report);

// Wall-clock sidecar for a report.
nlohmann::ordered_json timings_to_json(const PlanReport& report);

// One polyline per vehicle, one coverage circle per refuel stop, and a
// square marker per point.
std::string route_svg(const Scenario& scenario, const CooperativePlan& plan);

// Fixed column order for the metrics CSV.
const std::vector<std::string>& metrics_columns();
std::string metrics_header();
std::string metrics_row(const PlanReport& report, const MethodOutcome& outcome,
                        std::string_view scale);

std::string fixed(double value, int decimals);

}  // namespace cooproute
