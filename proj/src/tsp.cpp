#include "cooproute/tsp.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "cooproute/errors.hpp"

namespace cooproute {

namespace {

void check_instance(const TourInstance& inst) {
  if (inst.metric == nullptr) throw InvalidArgument("tour instance has no metric");
  if (inst.nodes.empty()) throw InvalidArgument("tour instance has no nodes");
  if (std::find(inst.nodes.begin(), inst.nodes.end(), inst.start) == inst.nodes.end()) {
    throw InvalidArgument("tour start is not one of its nodes");
  }
}

// Start first, remaining nodes ascending and de-duplicated.
std::vector<PointId> canonical_nodes(const TourInstance& inst) {
  std::vector<PointId> rest;
  for (PointId n : inst.nodes) {
    if (n != inst.start) rest.push_back(n);
  }
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  rest.insert(rest.begin(), inst.start);
  return rest;
}

// Of a tour and its reversal, keep the lexicographically smaller.
void canonical_direction(std::vector<PointId>& order) {
  if (order.size() < 3) return;
  std::vector<PointId> rev(order);
  std::reverse(rev.begin() + 1, rev.end());
  if (rev < order) order = std::move(rev);
}

}  // namespace

Meters tour_length(const std::vector<PointId>& order, const TravelMatrix& metric) {
  if (order.size() < 2) return 0.0;
  Meters total = 0.0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) total += metric.distance(order[i], order[i + 1]);
  return total + metric.distance(order.back(), order.front());
}

Tour solve_tsp_exact(const TourInstance& inst) {
  check_instance(inst);
  const std::vector<PointId> nodes = canonical_nodes(inst);
  if (nodes.size() > kMaxExactTspNodes) {
    throw SizeLimitExceeded("exact TSP supports at most " +
                            std::to_string(kMaxExactTspNodes) + " nodes");
  }
  const TravelMatrix& d = *inst.metric;
  const std::size_t m = nodes.size() - 1;  // nodes besides the start
  if (m == 0) return Tour{{inst.start}, 0.0};

  const std::size_t full = (std::size_t{1} << m) - 1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // cost[mask][j]: shortest path from start covering mask, ending at j.
  std::vector<double> cost((full + 1) * m, kInf);
  std::vector<std::int8_t> parent((full + 1) * m, -1);
  auto at = [m](std::size_t mask, std::size_t j) { return mask * m + j; };
  for (std::size_t j = 0; j < m; ++j) {
    cost[at(std::size_t{1} << j, j)] = d.distance(nodes[0], nodes[j + 1]);
  }
  for (std::size_t mask = 1; mask <= full; ++mask) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const double base = cost[at(mask, j)];
      if (base == kInf) continue;
      for (std::size_t k = 0; k < m; ++k) {
        if (mask & (std::size_t{1} << k)) continue;
        const std::size_t next = mask | (std::size_t{1} << k);
        const double c = base + d.distance(nodes[j + 1], nodes[k + 1]);
        if (c < cost[at(next, k)]) {
          cost[at(next, k)] = c;
          parent[at(next, k)] = static_cast<std::int8_t>(j);
        }
      }
    }
  }
  double best = kInf;
  std::size_t last = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double c = cost[at(full, j)] + d.distance(nodes[j + 1], nodes[0]);
    if (c < best) {
      best = c;
      last = j;
    }
  }
  std::vector<PointId> order;
  std::size_t mask = full;
  std::int8_t j = static_cast<std::int8_t>(last);
  while (j >= 0) {
    order.push_back(nodes[static_cast<std::size_t>(j) + 1]);
    const std::int8_t p = parent[at(mask, static_cast<std::size_t>(j))];
    mask &= ~(std::size_t{1} << static_cast<std::size_t>(j));
    j = p;
  }
  order.push_back(nodes[0]);
  std::reverse(order.begin(), order.end());
  canonical_direction(order);
  return Tour{order, tour_length(order, d)};
}

void two_opt(std::vector<PointId>& order, const TravelMatrix& d, bool fixed_end) {
  const std::size_t n = order.size();
  if (n < 4) return;
  // Closed tour: edges (i, i+1) with wraparound; open path: no wraparound
  // edge and the last node stays put.
  bool improved = true;
  while (improved) {
    improved = false;
    const std::size_t edges = fixed_end ? n - 1 : n;
    for (std::size_t i = 0; i + 1 < edges && !improved; ++i) {
      for (std::size_t j = i + 2; j < edges; ++j) {
        if (!fixed_end && i == 0 && j == n - 1) continue;  // adjacent via wrap
        const PointId a = order[i], b = order[i + 1];
        const PointId c = order[j], e = order[(j + 1) % n];
        const double delta = d.distance(a, c) + d.distance(b, e) -
                             d.distance(a, b) - d.distance(c, e);
        if (delta < -1e-9) {
          std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                       order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
          improved = true;
          break;
        }
      }
    }
  }
}

bool has_improving_two_opt(const std::vector<PointId>& order, const TravelMatrix& d,
                           double eps) {
  const std::size_t n = order.size();
  if (n < 4) return false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const double delta = d.distance(order[i], order[j]) +
                           d.distance(order[i + 1], order[(j + 1) % n]) -
                           d.distance(order[i], order[i + 1]) -
                           d.distance(order[j], order[(j + 1) % n]);
      if (delta < -eps) return true;
    }
  }
  return false;
}

Tour solve_tsp_heuristic(const TourInstance& inst, std::uint64_t seed,
                         const TspHeuristicOptions& options) {
  check_instance(inst);
  const std::vector<PointId> nodes = canonical_nodes(inst);
  const TravelMatrix& d = *inst.metric;
  if (nodes.size() <= 3) {
    std::vector<PointId> order = nodes;
    canonical_direction(order);
    return Tour{order, tour_length(order, d)};
  }

  std::vector<PointId> order{nodes[0]};
  std::vector<bool> used(nodes.size(), false);
  used[0] = true;
  for (std::size_t step = 1; step < nodes.size(); ++step) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      if (used[k]) continue;
      const double dk = d.distance(order.back(), nodes[k]);
      if (dk < best_d) {
        best_d = dk;
        best = k;
      }
    }
    used[best] = true;
    order.push_back(nodes[best]);
  }
  two_opt(order, d);
  double best_len = tour_length(order, d);

  std::mt19937_64 rng(seed);
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<PointId> trial(nodes.begin() + 1, nodes.end());
    // Fisher-Yates with explicit draws for cross-platform determinism.
    for (std::size_t i = trial.size(); i > 1; --i) {
      std::swap(trial[i - 1], trial[static_cast<std::size_t>(rng() % i)]);
    }
    trial.insert(trial.begin(), nodes[0]);
    two_opt(trial, d);
    const double len = tour_length(trial, d);
    if (len < best_len - 1e-9) {
      best_len = len;
      order = std::move(trial);
    }
  }
  canonical_direction(order);
  return Tour{order, tour_length(order, d)};
}

}  // namespace cooproute
