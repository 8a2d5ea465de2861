#pragma once

#include <cstdint>

namespace cooproute {

// Depot is always id 0; assignment points are 1..n.
using PointId = int;
inline constexpr PointId kDepot = 0;

// Internal time granularity is whole seconds.
using Seconds = std::int64_t;
using Meters = double;
using Joules = double;
using Watts = double;

}  // namespace cooproute
