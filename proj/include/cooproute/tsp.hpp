#pragma once

#include <cstdint>
#include <vector>

#include "cooproute/model.hpp"

namespace cooproute {

struct TourInstance {
  std::vector<PointId> nodes;
  PointId start = kDepot;
  const TravelMatrix* metric = nullptr;
};

// `order` lists every node once, starting at `start`; the closing leg back
// to `start` is implicit and included in `length`.
struct Tour {
  std::vector<PointId> order;
  Meters length = 0.0;
};

inline constexpr std::size_t kMaxExactTspNodes = 16;

Meters tour_length(const std::vector<PointId>& order, const TravelMatrix& metric);

// Held-Karp over subsets. Throws SizeLimitExceeded above kMaxExactTspNodes.
Tour solve_tsp_exact(const TourInstance& instance);

struct TspHeuristicOptions {
  int restarts = 4;
};

// Nearest neighbour, then 2-opt to a local optimum; seeded random restarts
// keep the best tour.
Tour solve_tsp_heuristic(const TourInstance& instance, std::uint64_t seed,
                         const TspHeuristicOptions& options = {});

// Applies improving 2-opt moves until none remains. When `fixed_end` is
// set the sequence is an open path whose endpoints stay in place.
void two_opt(std::vector<PointId>& order, const TravelMatrix& metric,
             bool fixed_end = false);

// True if some 2-opt move shortens the closed tour by more than `eps`.
bool has_improving_two_opt(const std::vector<PointId>& order,
                           const TravelMatrix& metric, double eps = 1e-7);

}  // namespace cooproute
