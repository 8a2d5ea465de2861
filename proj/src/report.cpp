#include "cooproute/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cooproute/errors.hpp"

namespace cooproute {

using nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::optional<double> nominal_scale_factor(const Scenario& s) {
  for (Scale sc : {Scale::Small, Scale::Medium, Scale::Large}) {
    if (scale_spec(sc).map_extent == s.map_extent) return scale_spec(sc).nominal_scale_factor;
  }
  return std::nullopt;
}

std::string join_violations(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += "; ";
    out += v[i];
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ordered_json sortie_to_json(const Sortie& s) {
  return ordered_json{{"order", s.order},
                      {"node_times_s", s.node_times},
                      {"node_fuel_j", s.node_fuel},
                      {"departure_s", s.departure},
                      {"arrival_s", s.arrival},
                      {"duration_s", s.duration},
                      {"departure_delay_s", s.departure_delay},
                      {"energy_j", s.energy}};
}

ordered_json parameters_json(const Scenario& s, Seconds horizon) {
  ordered_json p;
  p["uav_speed_mps"] = s.uav.speed;
  p["ugv_speed_mps"] = s.ugv.speed;
  p["uav_fuel_capacity_j"] = s.uav.fuel_capacity;
  p["uav_recharge_rate_w"] = s.uav.recharge_rate;
  p["uav_cruise_power_w"] = s.uav.cruise_power();
  p["ugv_drive_power_w"] = s.ugv.cruise_power();
  p["ugv_idle_power_w"] = s.ugv.power(0.0);
  p["uav_power_coefficients"] = s.uav.power.coefficients();
  p["ugv_power_coefficients"] = s.ugv.power.coefficients();
  p["coverage_radius_m"] = coverage_radius(s.uav);
  p["scale_factor"] = scale_factor(s);
  if (auto nominal = nominal_scale_factor(s)) {
    p["nominal_scale_factor"] = *nominal;
  } else {
    p["nominal_scale_factor"] = nullptr;
  }
  p["horizon_s"] = horizon;
  p["time_rounding"] = "each leg rounded up to whole seconds";
  return p;
}

}  // namespace

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string out(buf);
  if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') out.erase(0, 1);
  return out;
}

bool PlanReport::feasible() const {
  for (const MethodOutcome& o : outcomes) {
    if (!o.ok()) return false;
  }
  return true;
}

PlanReport solve_report(const Scenario& scenario, const std::vector<Method>& methods,
                        std::uint64_t seed) {
  PlanReport report;
  report.scenario = scenario;
  const TravelMatrix matrix(scenario);

  auto start = Clock::now();
  report.baseline = run_baseline(scenario, seed);
  report.baseline_wall_ms = ms_since(start);
  report.horizon = kHorizonMultiplier * report.baseline.task_time;

  for (Method method : methods) {
    MethodOutcome out;
    out.method = method;
    if (method == Method::Baseline) {
      out.plan = report.baseline;
      out.wall_ms = report.baseline_wall_ms;
    } else {
      PipelineOptions options;
      options.seed = seed;
      options.horizon = report.horizon;
      start = Clock::now();
      try {
        out.plan = run_cooperative(scenario, method, options);
      } catch (const PlanningError& e) {
        out.status = std::string("infeasible: ") + e.what();
      }
      out.wall_ms = ms_since(start);
    }
    if (out.plan) {
      const PlanCheck check = verify_plan(*out.plan, scenario, matrix);
      if (!check.ok()) out.status = "invalid: " + join_violations(check.violations);
      if (report.baseline.task_time > 0 && report.baseline.total_energy > 0.0) {
        out.improvement = compute_metrics(*out.plan, report.baseline);
      }
    }
    report.outcomes.push_back(std::move(out));
  }
  return report;
}

ordered_json plan_to_json(const CooperativePlan& plan) {
  ordered_json j;
  j["method"] = std::string(to_string(plan.method));
  j["task_time_s"] = plan.task_time;
  j["uav_energy_j"] = plan.uav_energy;
  j["ugv_energy_j"] = plan.ugv_energy;
  j["total_energy_j"] = plan.total_energy;

  if (plan.method == Method::Baseline) {
    j["tour"] = plan.baseline_tour;
  } else {
    j["refuel_stops"] = plan.cover.stops;
    j["stop_count"] = plan.cover.cardinality();
    j["covers_evaluated"] = plan.covers_evaluated;
    j["cover_incomplete"] = plan.cover_incomplete;
    j["stop_tour"] = plan.stop_tour;
    j["overflow"] = plan.overflow;
    j["carried_legs"] = plan.carried_legs;
  }

  ordered_json route = ordered_json::array();
  for (const Waypoint& w : plan.ugv.waypoints) {
    route.push_back({{"point", w.point},
                     {"arrival_s", w.arrival},
                     {"departure_s", w.departure},
                     {"refuel_stop", w.refuel_stop}});
  }
  j["ugv_route"] = std::move(route);

  if (plan.method == Method::Baseline) return j;

  ordered_json recharges = ordered_json::array();
  for (const Rendezvous& r : plan.ugv.waits) {
    recharges.push_back({{"stop", r.stop},
                         {"ugv_arrival_s", r.ugv_arrival},
                         {"uav_arrival_s", r.uav_arrival},
                         {"recharge_s", r.recharge},
                         {"ugv_wait_s", r.wait()}});
  }
  j["recharges"] = std::move(recharges);

  ordered_json legs = ordered_json::array();
  for (const LegPlan& leg : plan.legs) {
    const Subproblem& sp = leg.subproblem;
    ordered_json l{{"index", sp.index},
                   {"origin", sp.origin},
                   {"destination", sp.destination},
                   {"uav_points", sp.uav_points},
                   {"moved_to_ugv", leg.moved},
                   {"ugv_path", leg.ugv_path},
                   {"window_open_s", sp.window_open},
                   {"window_close_s", sp.window_close},
                   {"uav_release_s", leg.uav_release},
                   {"uav_arrival_s", leg.uav_arrival},
                   {"recharge_s", leg.recharge},
                   {"carried", leg.carried}};
    l["sortie"] = leg.sortie ? sortie_to_json(*leg.sortie) : ordered_json(nullptr);
    legs.push_back(std::move(l));
  }
  j["subproblems"] = std::move(legs);
  return j;
}

ordered_json report_to_json(const PlanReport& report) {
  const Scenario& s = report.scenario;
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["scenario"] = {{"name", s.name},
                   {"seed", s.seed},
                   {"map_extent_m", s.map_extent},
                   {"num_points", s.points.size()}};
  j["parameters"] = parameters_json(s, report.horizon);

  std::vector<std::string> notes{
      "greedy and exact plans differ only in refuel-stop selection",
      "horizon is ten times the UGV-only task time",
      "wall-clock timings are kept in a separate timings file"};
  for (const MethodOutcome& o : report.outcomes) {
    if (!o.plan) continue;
    const std::string m(to_string(o.method));
    if (o.plan->overflow) notes.push_back(m + ": some points did not fit a single sortie and were moved to the UGV");
    if (o.plan->carried_legs > 0) notes.push_back(m + ": the UAV rides the UGV on " + std::to_string(o.plan->carried_legs) + " leg(s)");
    if (o.plan->cover_incomplete) notes.push_back(m + ": cover enumeration stopped at its node limit");
  }
  j["notes"] = notes;

  ordered_json plans, improvements;
  plans["baseline"] = plan_to_json(report.baseline);
  for (const MethodOutcome& o : report.outcomes) {
    const std::string m(to_string(o.method));
    if (o.method != Method::Baseline) {
      ordered_json p = o.plan ? plan_to_json(*o.plan) : ordered_json{{"method", m}};
      p["status"] = o.status;
      plans[m] = std::move(p);
    }
    if (o.improvement) {
      improvements[m] = {{"time_pct", o.improvement->time_pct},
                         {"energy_pct", o.improvement->energy_pct}};
    } else {
      improvements[m] = nullptr;
    }
  }
  j["plans"] = std::move(plans);
  j["improvements"] = std::move(improvements);
  j["feasible"] = report.feasible();
  return j;
}

ordered_json timings_to_json(const PlanReport& report) {
  ordered_json j;
  j["scenario"] = report.scenario.name;
  j["baseline_ms"] = report.baseline_wall_ms;
  for (const MethodOutcome& o : report.outcomes) {
    ordered_json t{{"solve_wall_ms", o.wall_ms}};
    if (o.plan && o.method != Method::Baseline) {
      t["cover_ms"] = o.plan->timings.cover_ms;
      t["tsp_ms"] = o.plan->timings.tsp_ms;
      t["evrptw_ms"] = o.plan->timings.evrptw_ms;
    }
    j[std::string(to_string(o.method))] = std::move(t);
  }
  return j;
}

std::string route_svg(const Scenario& scenario, const CooperativePlan& plan) {
  constexpr double kCanvas = 800.0;
  constexpr double kMargin = 20.0;
  const double extent = scenario.map_extent > 0.0 ? scenario.map_extent : 1.0;
  const double k = (kCanvas - 2 * kMargin) / extent;
  auto px = [&](const Point& p) { return fixed(kMargin + p.x * k, 1); };
  auto py = [&](const Point& p) { return fixed(kMargin + (extent - p.y) * k, 1); };
  auto polyline = [&](const std::vector<PointId>& ids, const char* cls, const char* colour,
                      const char* dash) {
    std::ostringstream o;
    o << "  <polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << colour
      << "\" stroke-width=\"2\"" << dash << " points=\"";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const Point& p = scenario.node(ids[i]);
      o << (i ? " " : "") << px(p) << "," << py(p);
    }
    o << "\"/>\n";
    return o.str();
  };

  std::vector<PointId> ugv;
  for (const Waypoint& w : plan.ugv.waypoints) {
    if (ugv.empty() || ugv.back() != w.point) ugv.push_back(w.point);
  }
  std::vector<PointId> uav;
  for (const LegPlan& leg : plan.legs) {
    const std::vector<PointId>& path = leg.sortie ? leg.sortie->order : leg.ugv_path;
    for (PointId id : path) {
      if (uav.empty() || uav.back() != id) uav.push_back(id);
    }
  }

  std::ostringstream o;
  const std::string size = fixed(kCanvas, 0);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
    << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  o << "  <title>" << scenario.name << " " << to_string(plan.method) << "</title>\n";
  const std::string r = fixed(coverage_radius(scenario.uav) * k, 1);
  if (plan.method != Method::Baseline) {
    for (PointId stop : plan.cover.stops) {
      const Point& p = scenario.node(stop);
      o << "  <circle class=\"coverage\" cx=\"" << px(p) << "\" cy=\"" << py(p) << "\" r=\"" << r
        << "\" fill=\"#1f77b4\" fill-opacity=\"0.08\" stroke=\"#1f77b4\"/>\n";
    }
  }
  o << polyline(ugv, "ugv", "#d62728", "");
  if (!uav.empty()) o << polyline(uav, "uav", "#2ca02c", " stroke-dasharray=\"6 3\"");
  for (std::size_t id = 0; id < scenario.node_count(); ++id) {
    const Point& p = scenario.node(static_cast<PointId>(id));
    const double half = id == 0 ? 6.0 : 3.0;
    o << "  <rect class=\"" << (id == 0 ? "depot" : "point") << "\" x=\""
      << fixed(kMargin + p.x * k - half, 1) << "\" y=\""
      << fixed(kMargin + (extent - p.y) * k - half, 1) << "\" width=\"" << fixed(2 * half, 0)
      << "\" height=\"" << fixed(2 * half, 0) << "\" fill=\"" << (id == 0 ? "#000" : "#555")
      << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

const std::vector<std::string>& metrics_columns() {
  static const std::vector<std::string> columns{
      "scenario",         "scale",        "seed",
      "method",           "refuel_stops", "route_time_min",
      "energy_mj",        "time_improvement_pct", "energy_improvement_pct",
      "moved_points",     "carried_legs", "status"};
  return columns;
}

std::string metrics_header() {
  std::string out;
  for (const std::string& c : metrics_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

std::string metrics_row(const PlanReport& report, const MethodOutcome& o,
                        std::string_view scale) {
  std::vector<std::string> f{csv_field(report.scenario.name), std::string(scale),
                             std::to_string(report.scenario.seed),
                             std::string(to_string(o.method))};
  if (o.plan) {
    const CooperativePlan& p = *o.plan;
    std::size_t moved = 0;
    for (const LegPlan& leg : p.legs) moved += leg.moved.size();
    const bool baseline = o.method == Method::Baseline;
    f.push_back(baseline ? "0" : std::to_string(p.cover.cardinality()));
    f.push_back(std::to_string(std::llround(static_cast<double>(p.task_time) / 60.0)));
    f.push_back(fixed(p.total_energy / 1e6, 2));
    f.push_back(o.improvement ? fixed(o.improvement->time_pct, 2) : "");
    f.push_back(o.improvement ? fixed(o.improvement->energy_pct, 2) : "");
    f.push_back(std::to_string(moved));
    f.push_back(std::to_string(p.carried_legs));
  } else {
    f.insert(f.end(), 7, "");
  }
  f.push_back(csv_field(o.status));
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i];
  return out;
}

}  // namespace cooproute
