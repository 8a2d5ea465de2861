#include "cooproute/evrptw.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include "cooproute/errors.hpp"

namespace cooproute {

namespace {

// Absolute slack on the fuel budget; absorbs summation-order rounding only.
constexpr Joules kFuelSlack = 1e-6;

}  // namespace

PointId EvrptwInstance::local_id(std::size_t k) const {
  if (k == 0) return start;
  if (k == visits.size() + 1) return destination;
  return visits.at(k - 1);
}

EvrptwInstance make_evrptw_instance(PointId start, PointId destination,
                                    std::vector<PointId> visits,
                                    const TravelMatrix& matrix, const VehicleSpec& uav,
                                    Seconds window_open, Seconds window_close,
                                    Seconds earliest_departure) {
  if (window_open > window_close) throw InvalidArgument("window closes before it opens");
  if (window_open < 0 || earliest_departure < 0) throw InvalidArgument("negative time");
  EvrptwInstance inst;
  inst.start = start;
  inst.destination = destination;
  inst.visits = std::move(visits);
  inst.fuel_capacity = uav.fuel_capacity;
  inst.window_open = window_open;
  inst.window_close = window_close;
  inst.earliest_departure = earliest_departure;
  const std::size_t n = inst.local_count();
  const Watts power = uav.cruise_power();
  inst.leg_time.assign(n, std::vector<Seconds>(n, 0));
  inst.leg_energy.assign(n, std::vector<Joules>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Meters d = matrix.distance(inst.local_id(i), inst.local_id(j));
      inst.leg_time[i][j] = seconds_for(d, uav.speed);
      inst.leg_energy[i][j] = power * d / uav.speed;
    }
  }
  return inst;
}

Sortie trace_sortie(const EvrptwInstance& inst, const std::vector<std::size_t>& local_order,
                    Seconds departure) {
  Sortie s;
  s.departure = departure;
  s.departure_delay = departure - inst.earliest_departure;
  Seconds t = departure;
  Joules f = inst.fuel_capacity;
  for (std::size_t k = 0; k < local_order.size(); ++k) {
    if (k > 0) {
      t += inst.leg_time[local_order[k - 1]][local_order[k]];
      f -= inst.leg_energy[local_order[k - 1]][local_order[k]];
    }
    s.order.push_back(inst.local_id(local_order[k]));
    s.node_times.push_back(t);
    s.node_fuel.push_back(f);
  }
  s.arrival = t;
  s.duration = t - departure;
  s.energy = inst.fuel_capacity - f;
  return s;
}

Joules recharge_need(const Sortie& sortie, const EvrptwInstance& inst) {
  return inst.fuel_capacity - sortie.fuel_at_destination();
}

namespace {

// Departure that lands exactly on the window opening when the direct
// schedule would arrive early.
Seconds departure_for(const EvrptwInstance& inst, Seconds flight) {
  return std::max(inst.earliest_departure, inst.window_open - flight);
}

bool fits(const EvrptwInstance& inst, Seconds flight, Joules energy) {
  return energy <= inst.fuel_capacity + kFuelSlack &&
         inst.earliest_departure + flight <= inst.window_close;
}

class ExactSearch {
 public:
  explicit ExactSearch(const EvrptwInstance& inst)
      : inst_(inst),
        m_(inst.visits.size()),
        dest_(m_ + 1),
        memo_((std::size_t{1} << m_) * (m_ + 1),
              {std::numeric_limits<Seconds>::max(), std::numeric_limits<Joules>::infinity()}) {}

  std::optional<std::vector<std::size_t>> run() {
    path_.assign(1, 0);
    dfs(0, 0, 0, 0.0);
    if (!found_) return std::nullopt;
    return best_path_;
  }

 private:
  // Every node still to leave (current and unvisited) needs one outgoing
  // leg into the unvisited set or D.
  std::pair<Seconds, Joules> lower_bound(std::size_t cur, std::size_t mask) const {
    Seconds t = 0;
    Joules e = 0.0;
    auto add_min_out = [&](std::size_t from) {
      Seconds bt = inst_.leg_time[from][dest_];
      Joules be = inst_.leg_energy[from][dest_];
      for (std::size_t v = 0; v < m_; ++v) {
        if (mask & (std::size_t{1} << v)) continue;
        if (v + 1 == from) continue;
        bt = std::min(bt, inst_.leg_time[from][v + 1]);
        be = std::min(be, inst_.leg_energy[from][v + 1]);
      }
      t += bt;
      e += be;
    };
    add_min_out(cur);
    for (std::size_t v = 0; v < m_; ++v) {
      if (!(mask & (std::size_t{1} << v))) add_min_out(v + 1);
    }
    return {t, e};
  }

  void dfs(std::size_t cur, std::size_t mask, Seconds flight, Joules energy) {
    const std::size_t full = (std::size_t{1} << m_) - 1;
    if (mask == full) {
      const Seconds total = flight + inst_.leg_time[cur][dest_];
      const Joules used = energy + inst_.leg_energy[cur][dest_];
      if (fits(inst_, total, used) && (!found_ || total < best_flight_)) {
        found_ = true;
        best_flight_ = total;
        best_path_ = path_;
        best_path_.push_back(dest_);
      }
      return;
    }
    auto& seen = memo_[mask * (m_ + 1) + cur];
    if (flight >= seen.first && energy >= seen.second) return;
    if (flight <= seen.first && energy <= seen.second) seen = {flight, energy};

    const auto [lb_t, lb_e] = lower_bound(cur, mask);
    if (!fits(inst_, flight + lb_t, energy + lb_e)) return;
    if (found_ && flight + lb_t >= best_flight_) return;

    for (std::size_t v = 0; v < m_; ++v) {
      if (mask & (std::size_t{1} << v)) continue;
      const Joules e = energy + inst_.leg_energy[cur][v + 1];
      if (e > inst_.fuel_capacity + kFuelSlack) continue;
      path_.push_back(v + 1);
      dfs(v + 1, mask | (std::size_t{1} << v), flight + inst_.leg_time[cur][v + 1], e);
      path_.pop_back();
    }
  }

  const EvrptwInstance& inst_;
  std::size_t m_;
  std::size_t dest_;
  std::vector<std::pair<Seconds, Joules>> memo_;
  std::vector<std::size_t> path_;
  bool found_ = false;
  Seconds best_flight_ = 0;
  std::vector<std::size_t> best_path_;
};

Sortie finish(const EvrptwInstance& inst, const std::vector<std::size_t>& order) {
  Seconds flight = 0;
  for (std::size_t k = 1; k < order.size(); ++k) flight += inst.leg_time[order[k - 1]][order[k]];
  return trace_sortie(inst, order, departure_for(inst, flight));
}

struct Cost {
  Seconds flight = 0;
  Joules energy = 0.0;
};

Cost cost_of(const EvrptwInstance& inst, const std::vector<std::size_t>& route) {
  Cost c;
  for (std::size_t k = 1; k < route.size(); ++k) {
    c.flight += inst.leg_time[route[k - 1]][route[k]];
    c.energy += inst.leg_energy[route[k - 1]][route[k]];
  }
  return c;
}

bool better(const Cost& a, const Cost& b) {
  if (a.flight != b.flight) return a.flight < b.flight;
  return a.energy < b.energy - 1e-9;
}

// Inserts `u` at its cheapest feasible position; false if none fits.
bool insert_cheapest(const EvrptwInstance& inst, std::vector<std::size_t>& route,
                     std::size_t u, Cost& cost) {
  std::size_t best_pos = 0;
  Cost best{};
  bool any = false;
  for (std::size_t p = 1; p < route.size(); ++p) {
    const std::size_t a = route[p - 1], b = route[p];
    Cost c{cost.flight + inst.leg_time[a][u] + inst.leg_time[u][b] - inst.leg_time[a][b],
           cost.energy + inst.leg_energy[a][u] + inst.leg_energy[u][b] - inst.leg_energy[a][b]};
    if (!fits(inst, c.flight, c.energy)) continue;
    if (!any || better(c, best)) {
      any = true;
      best = c;
      best_pos = p;
    }
  }
  if (!any) return false;
  route.insert(route.begin() + static_cast<std::ptrdiff_t>(best_pos), u);
  cost = best;
  return true;
}

void improve(const EvrptwInstance& inst, std::vector<std::size_t>& route) {
  Cost cost = cost_of(inst, route);
  bool improved = true;
  while (improved) {
    improved = false;
    const std::size_t n = route.size();
    // 2-opt on the interior; S and D stay fixed.
    for (std::size_t i = 0; i + 2 < n && !improved; ++i) {
      for (std::size_t j = i + 2; j + 1 < n && !improved; ++j) {
        std::vector<std::size_t> trial(route);
        std::reverse(trial.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                     trial.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        const Cost c = cost_of(inst, trial);
        if (fits(inst, c.flight, c.energy) && better(c, cost)) {
          route = std::move(trial);
          cost = c;
          improved = true;
        }
      }
    }
    // Relocate a single visit.
    for (std::size_t i = 1; i + 1 < n && !improved; ++i) {
      for (std::size_t j = 1; j + 1 < n && !improved; ++j) {
        if (i == j) continue;
        std::vector<std::size_t> trial(route);
        const std::size_t u = trial[i];
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(j), u);
        const Cost c = cost_of(inst, trial);
        if (fits(inst, c.flight, c.energy) && better(c, cost)) {
          route = std::move(trial);
          cost = c;
          improved = true;
        }
      }
    }
  }
}

}  // namespace

Sortie solve_exact(const EvrptwInstance& inst) {
  if (inst.visits.size() > kMaxExactVisits) {
    throw SizeLimitExceeded("exact sortie search supports at most " +
                            std::to_string(kMaxExactVisits) + " visits");
  }
  ExactSearch search(inst);
  auto path = search.run();
  if (!path) {
    throw Infeasible("no sortie from " + std::to_string(inst.start) + " to " +
                     std::to_string(inst.destination) + " through " +
                     std::to_string(inst.visits.size()) +
                     " visits fits the fuel budget and window");
  }
  return finish(inst, *path);
}

Sortie solve_heuristic(const EvrptwInstance& inst, std::uint64_t seed,
                       const EvrptwHeuristicOptions& options) {
  const std::size_t m = inst.visits.size();
  const std::size_t dest = m + 1;
  std::optional<std::vector<std::size_t>> best;
  Cost best_cost{};

  auto consider = [&](std::vector<std::size_t> route) {
    improve(inst, route);
    const Cost c = cost_of(inst, route);
    if (!best || better(c, best_cost) ||
        (!better(best_cost, c) && route < *best)) {
      best = std::move(route);
      best_cost = c;
    }
  };

  // Deterministic cheapest insertion over all remaining visits.
  {
    std::vector<std::size_t> route{0, dest};
    Cost cost = cost_of(inst, route);
    std::vector<bool> placed(m + 1, false);
    bool ok = fits(inst, cost.flight, cost.energy);
    for (std::size_t step = 0; step < m && ok; ++step) {
      std::size_t pick = 0;
      Cost pick_cost{};
      std::vector<std::size_t> pick_route;
      for (std::size_t u = 1; u <= m; ++u) {
        if (placed[u]) continue;
        std::vector<std::size_t> trial(route);
        Cost c = cost;
        if (!insert_cheapest(inst, trial, u, c)) continue;
        if (pick == 0 || better(c, pick_cost)) {
          pick = u;
          pick_cost = c;
          pick_route = std::move(trial);
        }
      }
      if (pick == 0) {
        ok = false;
      } else {
        placed[pick] = true;
        route = std::move(pick_route);
        cost = pick_cost;
      }
    }
    if (ok) consider(std::move(route));
  }

  std::mt19937_64 rng(seed);
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{1});
    for (std::size_t i = perm.size(); i > 1; --i) {
      std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng() % i)]);
    }
    std::vector<std::size_t> route{0, dest};
    Cost cost = cost_of(inst, route);
    bool ok = fits(inst, cost.flight, cost.energy);
    for (std::size_t u : perm) {
      if (!ok) break;
      ok = insert_cheapest(inst, route, u, cost);
    }
    if (ok) consider(std::move(route));
  }

  if (!best) {
    throw Infeasible("insertion could not place every visit between " +
                     std::to_string(inst.start) + " and " +
                     std::to_string(inst.destination));
  }
  return finish(inst, *best);
}

std::optional<Sortie> solve_sortie(const EvrptwInstance& inst, std::uint64_t seed) {
  try {
    if (inst.visits.size() <= kMaxExactVisits) return solve_exact(inst);
    return solve_heuristic(inst, seed);
  } catch (const Infeasible&) {
    return std::nullopt;
  }
}

std::string_view to_string(SortieConstraint c) {
  switch (c) {
    case SortieConstraint::Structure: return "structure";
    case SortieConstraint::Departure: return "departure";
    case SortieConstraint::Timing: return "timing";
    case SortieConstraint::Fuel: return "fuel";
    case SortieConstraint::Window: return "window";
    case SortieConstraint::Bookkeeping: return "bookkeeping";
  }
  return "unknown";
}

SortieValidation validate_sortie(const Sortie& s, const EvrptwInstance& inst) {
  auto fail = [](SortieConstraint c, PointId node, std::string detail) {
    return SortieValidation{SortieViolation{c, node, std::move(detail)}};
  };
  const std::size_t n = inst.local_count();
  if (s.order.size() != n || s.node_times.size() != n || s.node_fuel.size() != n) {
    return fail(SortieConstraint::Structure, inst.start, "route length does not match the instance");
  }
  if (s.order.front() != inst.start) return fail(SortieConstraint::Structure, s.order.front(), "route must leave S");
  if (s.order.back() != inst.destination) return fail(SortieConstraint::Structure, s.order.back(), "route must end at D");

  // Map interior ids back to local indices, each visit exactly once.
  std::vector<std::size_t> local{0};
  std::vector<bool> seen(inst.visits.size(), false);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    auto it = std::find(inst.visits.begin(), inst.visits.end(), s.order[k]);
    if (it == inst.visits.end()) return fail(SortieConstraint::Structure, s.order[k], "not a visit of this instance");
    const auto v = static_cast<std::size_t>(it - inst.visits.begin());
    if (seen[v]) return fail(SortieConstraint::Structure, s.order[k], "visited twice");
    seen[v] = true;
    local.push_back(v + 1);
  }
  local.push_back(n - 1);

  if (s.node_times.front() < inst.earliest_departure) {
    return fail(SortieConstraint::Departure, inst.start, "departs before the UAV is released");
  }
  Joules fuel = inst.fuel_capacity;
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t a = local[k - 1], b = local[k];
    if (s.node_times[k] < s.node_times[k - 1] + inst.leg_time[a][b]) {
      std::ostringstream msg;
      msg << "arrives at " << s.node_times[k] << " s, leg needs until "
          << s.node_times[k - 1] + inst.leg_time[a][b] << " s";
      return fail(SortieConstraint::Timing, s.order[k], msg.str());
    }
    fuel -= inst.leg_energy[a][b];
    if (fuel < -kFuelSlack) {
      std::ostringstream msg;
      msg << "fuel drops to " << fuel << " J";
      return fail(SortieConstraint::Fuel, s.order[k], msg.str());
    }
    if (std::abs(fuel - s.node_fuel[k]) > 1e-6 * std::max(1.0, inst.fuel_capacity)) {
      return fail(SortieConstraint::Bookkeeping, s.order[k], "recorded fuel differs from recomputation");
    }
  }
  const Seconds arrival = s.node_times.back();
  if (arrival < inst.window_open || arrival > inst.window_close) {
    std::ostringstream msg;
    msg << "arrives at " << arrival << " s outside [" << inst.window_open << ", "
        << inst.window_close << "]";
    return fail(SortieConstraint::Window, inst.destination, msg.str());
  }
  if (s.arrival != arrival || s.departure != s.node_times.front() ||
      s.duration != arrival - s.departure) {
    return fail(SortieConstraint::Bookkeeping, inst.destination, "recorded totals differ from node times");
  }
  return {};
}

}  // namespace cooproute
