#include "cooproute/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "cooproute/errors.hpp"
#include "cooproute/tsp.hpp"

namespace cooproute {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Plans are ranked by task time, then total energy, then stop list.
bool preferred(const CooperativePlan& a, const CooperativePlan& b) {
  if (a.task_time != b.task_time) return a.task_time < b.task_time;
  if (std::abs(a.total_energy - b.total_energy) > 1e-6) return a.total_energy < b.total_energy;
  return a.cover.stops < b.cover.stops;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Greedy: return "greedy";
    case Method::Exact: return "exact";
    case Method::Baseline: return "baseline";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view token) {
  for (Method m : {Method::Greedy, Method::Exact, Method::Baseline}) {
    if (to_string(m) == token) return m;
  }
  return std::nullopt;
}

CooperativePlan plan_for_cover(const Scenario& scenario, const TravelMatrix& matrix,
                               const RefuelPlan& cover, Seconds horizon,
                               std::uint64_t seed) {
  CooperativePlan plan;
  plan.cover = cover;
  const VehicleSpec& uav = scenario.uav;
  const double ugv_speed = scenario.ugv.speed;

  auto tsp_start = Clock::now();
  plan.stop_tour = plan_spatial(cover, matrix);
  plan.timings.tsp_ms = ms_since(tsp_start);

  auto sp_start = Clock::now();
  const auto subproblems = allocate(cover, plan.stop_tour, matrix, coverage_radius(uav));
  UgvRoute route = start_route();
  Seconds uav_ready = 0;

  for (std::size_t i = 0; i < subproblems.size(); ++i) {
    const bool final_leg = i + 1 == subproblems.size();
    Subproblem sp = subproblems[i];
    sp.window_close = horizon;

    auto ugv_arrival_via = [&](const std::vector<PointId>& path) {
      Seconds t = route.finish();
      for (std::size_t k = 1; k < path.size(); ++k) {
        t += travel_time(matrix, path[k - 1], path[k], ugv_speed);
      }
      return t;
    };

    std::optional<Sortie> last;
    auto feasible = [&](const Subproblem& cand, const std::vector<PointId>& path) {
      // Nothing waits for the UAV at the final depot return.
      const Seconds open = final_leg ? 0 : ugv_arrival_via(path);
      if (open > horizon) {
        last.reset();
        return false;
      }
      const auto inst = make_evrptw_instance(cand.origin, cand.destination, cand.uav_points,
                                             matrix, uav, open, horizon, uav_ready);
      last = solve_sortie(inst, seed + static_cast<std::uint64_t>(cand.index));
      return last.has_value();
    };
    OverflowResult fit = overflow_fallback(sp, matrix, feasible);

    LegPlan leg;
    leg.subproblem = fit.reduced;
    leg.subproblem.window_open = final_leg ? 0 : ugv_arrival_via(fit.ugv_leg);
    leg.ugv_path = fit.ugv_leg;
    leg.moved = fit.moved;
    leg.uav_release = uav_ready;

    for (std::size_t k = 1; k < fit.ugv_leg.size(); ++k) {
      const bool is_stop = !final_leg && k + 1 == fit.ugv_leg.size();
      route = append_waypoint(route, fit.ugv_leg[k], is_stop, matrix, ugv_speed);
    }
    const Seconds ugv_arrival = route.waypoints.back().arrival;

    if (fit.uav_feasible && last) {
      leg.uav_arrival = last->arrival;
      if (!final_leg) {
        leg.recharge = recharge_duration(FuelState{last->fuel_at_destination()}, uav);
      }
      leg.sortie = std::move(last);
    } else {
      leg.carried = true;
      leg.uav_arrival = ugv_arrival;
      ++plan.carried_legs;
    }
    if (!final_leg) {
      route = apply_rendezvous(route, sp.destination, leg.uav_arrival, leg.recharge);
      uav_ready = leg.uav_arrival + leg.recharge;
    }
    plan.overflow = plan.overflow || !leg.moved.empty();
    plan.legs.push_back(std::move(leg));
  }
  plan.timings.evrptw_ms = ms_since(sp_start);

  plan.ugv = std::move(route);
  plan.task_time = std::max(plan.ugv.finish(), plan.legs.back().uav_arrival);
  const EnergyBreakdown e = energy_accounting(plan, scenario, matrix);
  plan.uav_energy = e.uav;
  plan.ugv_energy = e.ugv;
  plan.total_energy = e.total;
  return plan;
}

CooperativePlan run_cooperative(const Scenario& scenario, Method method,
                                const PipelineOptions& options) {
  if (method == Method::Baseline) return run_baseline(scenario, options.seed);
  const auto start = Clock::now();
  const TravelMatrix matrix(scenario);
  const Seconds horizon = options.horizon.value_or(
      kHorizonMultiplier * run_baseline(scenario, options.seed).task_time);

  auto cover_start = Clock::now();
  const CoverInstance instance = build_cover_instance(scenario, matrix);
  std::vector<RefuelPlan> covers;
  bool incomplete = false;
  if (method == Method::Greedy) {
    covers.push_back(greedy_cover(instance));
  } else {
    ExactCoverResult res = exact_min_covers(instance, options.cover);
    covers = std::move(res.plans);
    incomplete = res.incomplete;
  }
  const double cover_ms = ms_since(cover_start);

  std::optional<CooperativePlan> best;
  double tsp_ms = 0.0, evrptw_ms = 0.0;
  for (const RefuelPlan& cover : covers) {
    CooperativePlan candidate = plan_for_cover(scenario, matrix, cover, horizon, options.seed);
    tsp_ms += candidate.timings.tsp_ms;
    evrptw_ms += candidate.timings.evrptw_ms;
    if (!best || preferred(candidate, *best)) best = std::move(candidate);
  }
  best->method = method;
  best->cover_incomplete = incomplete;
  best->covers_evaluated = covers.size();
  best->timings = StageTimings{cover_ms, tsp_ms, evrptw_ms, ms_since(start)};
  return *best;
}

CooperativePlan run_baseline(const Scenario& scenario, std::uint64_t seed) {
  const auto start = Clock::now();
  const TravelMatrix matrix(scenario);
  TourInstance inst;
  for (std::size_t id = 0; id < scenario.node_count(); ++id) {
    inst.nodes.push_back(static_cast<PointId>(id));
  }
  inst.start = kDepot;
  inst.metric = &matrix;
  const Tour tour = solve_tsp_heuristic(inst, seed);

  CooperativePlan plan;
  plan.method = Method::Baseline;
  plan.baseline_tour = tour.order;
  plan.ugv = start_route();
  for (std::size_t k = 1; k < tour.order.size(); ++k) {
    plan.ugv = append_waypoint(plan.ugv, tour.order[k], false, matrix, scenario.ugv.speed);
  }
  if (tour.order.size() > 1) {
    plan.ugv = append_waypoint(plan.ugv, kDepot, false, matrix, scenario.ugv.speed);
  }
  plan.task_time = plan.ugv.finish();
  const EnergyBreakdown e = energy_accounting(plan, scenario, matrix);
  plan.uav_energy = e.uav;
  plan.ugv_energy = e.ugv;
  plan.total_energy = e.total;
  plan.timings.tsp_ms = ms_since(start);
  plan.timings.total_ms = plan.timings.tsp_ms;
  return plan;
}

EnergyBreakdown energy_accounting(const CooperativePlan& plan, const Scenario& scenario,
                                  const TravelMatrix& matrix) {
  EnergyBreakdown e;
  for (const LegPlan& leg : plan.legs) {
    if (leg.sortie) e.uav += leg.sortie->energy;
  }
  const Watts drive = scenario.ugv.cruise_power();
  const Watts idle = scenario.ugv.power(0.0);
  e.ugv = drive * driving_distance(plan.ugv, matrix) / scenario.ugv.speed +
          idle * static_cast<double>(total_wait(plan.ugv));
  e.total = e.uav + e.ugv;
  return e;
}

double improvement_pct(double baseline, double value) {
  if (!(baseline > 0.0)) throw InvalidArgument("baseline must be positive");
  return (baseline - value) / baseline * 100.0;
}

Improvement compute_metrics(const CooperativePlan& plan, const CooperativePlan& baseline) {
  return Improvement{
      improvement_pct(static_cast<double>(baseline.task_time), static_cast<double>(plan.task_time)),
      improvement_pct(baseline.total_energy, plan.total_energy)};
}

PlanCheck verify_plan(const CooperativePlan& plan, const Scenario& scenario,
                      const TravelMatrix& matrix) {
  PlanCheck check;
  auto violation = [&](const std::string& what) { check.violations.push_back(what); };

  // Each assignment point served exactly once.
  std::map<PointId, int> served;
  if (plan.method == Method::Baseline) {
    for (std::size_t k = 1; k < plan.baseline_tour.size(); ++k) ++served[plan.baseline_tour[k]];
  } else {
    for (const LegPlan& leg : plan.legs) {
      if (leg.sortie) {
        for (std::size_t k = 1; k + 1 < leg.sortie->order.size(); ++k) ++served[leg.sortie->order[k]];
      }
      for (std::size_t k = 1; k + 1 < leg.ugv_path.size(); ++k) ++served[leg.ugv_path[k]];
    }
  }
  for (const Point& p : scenario.points) {
    const int count = served.count(p.id) ? served[p.id] : 0;
    if (count != 1) {
      violation("point " + std::to_string(p.id) + " served " + std::to_string(count) + " times");
    }
  }
  for (const auto& [id, count] : served) {
    if (id == kDepot || static_cast<std::size_t>(id) >= scenario.node_count()) {
      violation("route serves unknown point " + std::to_string(id));
    }
  }

  // UGV timing chain.
  const auto& wps = plan.ugv.waypoints;
  if (wps.empty() || wps.front().point != kDepot || wps.front().arrival != 0) {
    violation("UGV route must start at the depot at t = 0");
  }
  if (!wps.empty() && wps.back().point != kDepot) violation("UGV route must end at the depot");
  for (std::size_t k = 1; k < wps.size(); ++k) {
    const Seconds expect =
        wps[k - 1].departure + travel_time(matrix, wps[k - 1].point, wps[k].point, scenario.ugv.speed);
    if (wps[k].arrival != expect) {
      violation("UGV arrival at waypoint " + std::to_string(k) + " inconsistent with leg time");
    }
    if (wps[k].departure < wps[k].arrival) violation("UGV departs before arriving at waypoint " + std::to_string(k));
    if (wps[k].departure > wps[k].arrival && !wps[k].refuel_stop) {
      violation("UGV waits at non-stop waypoint " + std::to_string(k));
    }
  }

  // Rendezvous consistency.
  for (const Rendezvous& r : plan.ugv.waits) {
    if (r.uav_arrival < r.ugv_arrival) {
      violation("UAV reaches stop " + std::to_string(r.stop) + " before the UGV");
    }
    auto it = std::find_if(wps.begin(), wps.end(), [&](const Waypoint& w) {
      return w.point == r.stop && w.refuel_stop && w.arrival == r.ugv_arrival;
    });
    if (it == wps.end()) {
      violation("rendezvous at " + std::to_string(r.stop) + " has no matching waypoint");
    } else if (it->departure != r.uav_arrival + r.recharge) {
      violation("UGV departure at stop " + std::to_string(r.stop) + " is not UAV arrival + recharge");
    }
  }

  // Fuel replay through drain(), recharging to full at every stop.
  const VehicleSpec& uav = scenario.uav;
  Seconds ready = 0;
  Joules uav_energy = 0.0;
  for (std::size_t i = 0; i < plan.legs.size(); ++i) {
    const LegPlan& leg = plan.legs[i];
    const bool final_leg = i + 1 == plan.legs.size();
    if (leg.uav_release != ready) violation("UAV release time mismatch on leg " + std::to_string(i + 1));
    if (leg.carried) {
      if (leg.sortie) violation("carried leg " + std::to_string(i + 1) + " also has a sortie");
      ready = leg.uav_arrival + leg.recharge;
      continue;
    }
    if (!leg.sortie) {
      violation("leg " + std::to_string(i + 1) + " has neither sortie nor carried transit");
      continue;
    }
    const Sortie& s = *leg.sortie;
    if (s.order.front() != leg.subproblem.origin || s.order.back() != leg.subproblem.destination) {
      violation("sortie endpoints differ from subproblem " + std::to_string(i + 1));
    }
    if (s.departure < ready) violation("UAV departs leg " + std::to_string(i + 1) + " before recharge completes");
    FuelState fuel{uav.fuel_capacity};
    Seconds t = s.departure;
    try {
      for (std::size_t k = 1; k < s.order.size(); ++k) {
        const Meters d = matrix.distance(s.order[k - 1], s.order[k]);
        fuel = drain(fuel, d / uav.speed, uav.cruise_power());
        t += seconds_for(d, uav.speed);
        if (s.node_times[k] != t) violation("UAV time mismatch at point " + std::to_string(s.order[k]));
      }
    } catch (const FuelExhausted& e) {
      violation("UAV runs dry on leg " + std::to_string(i + 1) + ": " + e.what());
    }
    uav_energy += uav.fuel_capacity - fuel.remaining;
    if (t != leg.uav_arrival) violation("UAV arrival mismatch on leg " + std::to_string(i + 1));
    if (!final_leg) {
      const Seconds need = recharge_duration(fuel, uav);
      if (std::abs(static_cast<double>(need - leg.recharge)) > 1.0) {
        violation("recharge duration mismatch at stop " + std::to_string(leg.subproblem.destination));
      }
    }
    ready = leg.uav_arrival + leg.recharge;
  }

  // Metrics from the raw routes.
  Seconds finish = wps.empty() ? 0 : wps.back().arrival;
  if (!plan.legs.empty()) finish = std::max(finish, plan.legs.back().uav_arrival);
  if (std::abs(static_cast<double>(finish - plan.task_time)) > 1.0) {
    violation("task time " + std::to_string(plan.task_time) + " s, recomputed " +
              std::to_string(finish) + " s");
  }
  Meters drive = 0.0;
  Seconds idle = 0;
  for (std::size_t k = 1; k < wps.size(); ++k) drive += matrix.distance(wps[k - 1].point, wps[k].point);
  for (const Waypoint& w : wps) idle += w.departure - w.arrival;
  const Joules ugv_energy = scenario.ugv.cruise_power() * drive / scenario.ugv.speed +
                            scenario.ugv.power(0.0) * static_cast<double>(idle);
  if (std::abs(uav_energy - plan.uav_energy) > 1.0) violation("UAV energy does not recompute");
  if (std::abs(ugv_energy - plan.ugv_energy) > 1.0) violation("UGV energy does not recompute");
  if (std::abs(plan.uav_energy + plan.ugv_energy - plan.total_energy) > 1.0) {
    violation("total energy is not the sum of vehicle energies");
  }
  return check;
}

}  // namespace cooproute
