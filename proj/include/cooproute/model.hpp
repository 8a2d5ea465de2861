#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cooproute/energy.hpp"
#include "cooproute/types.hpp"

namespace cooproute {

struct Point {
  PointId id = 0;
  Meters x = 0.0;
  Meters y = 0.0;

  bool operator==(const Point&) const = default;
};

enum class VehicleKind { Uav, Ugv };

struct VehicleSpec {
  VehicleKind kind = VehicleKind::Uav;
  double speed = 0.0;           // m/s
  Joules fuel_capacity = 0.0;   // UAV only; the UGV tank is unbounded
  Watts recharge_rate = 0.0;    // UAV only
  PowerModel power = PowerModel::default_uav();

  Watts cruise_power() const { return power(speed); }
  bool operator==(const VehicleSpec&) const = default;
};

// Defaults used whenever a scenario does not say otherwise. Speeds and the
// fuel budget are not published with the benchmark, so they are calibrated:
// the UAV coverage radius is 7.37 km, which gives a scale factor of 1.5 on
// the 16 km map.
inline constexpr double kDefaultUavSpeed = 10.0;
inline constexpr double kDefaultUgvSpeed = 4.5;
inline constexpr Meters kDefaultCoverageRadius = 7370.0;
inline constexpr double kDefaultFullChargeSeconds = 900.0;

VehicleSpec default_uav();
VehicleSpec default_ugv();

struct Scenario {
  std::string name;
  Meters map_extent = 0.0;
  Point depot;
  std::vector<Point> points;  // excludes the depot; ids 1..n
  VehicleSpec uav = default_uav();
  VehicleSpec ugv = default_ugv();
  std::uint64_t seed = 0;

  std::size_t node_count() const { return points.size() + 1; }
  const Point& node(PointId id) const;

  bool operator==(const Scenario&) const = default;
};

// Throws InvalidArgument when ids are not dense from 0, points leave the
// map, or a vehicle spec is unusable.
void validate_scenario(const Scenario& scenario);

// Symmetric Euclidean distances over the depot and all points, indexed by
// PointId.
class TravelMatrix {
 public:
  explicit TravelMatrix(const Scenario& scenario);
  explicit TravelMatrix(const std::vector<Point>& nodes);

  Meters distance(PointId i, PointId j) const;
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
  std::vector<Meters> dist_;
};

// Converts a distance to integer seconds, rounding up.
Seconds seconds_for(Meters distance, double speed);

Seconds travel_time(const TravelMatrix& matrix, PointId i, PointId j,
                    double speed);

enum class Scale { Small, Medium, Large };

struct ScaleSpec {
  Scale scale;
  std::string_view token;
  Meters map_extent;
  int num_points;
  double nominal_scale_factor;
};

const ScaleSpec& scale_spec(Scale scale);
std::optional<Scale> parse_scale(std::string_view token);

// Dotted JSON paths into the scenario document, e.g. "uav.speed_mps".
using Overrides = std::map<std::string, std::string>;

inline constexpr int kGenerationRetries = 1000;

Scenario generate_scenario(Scale scale, std::uint64_t seed,
                           const Overrides& overrides = {});

double scale_factor(const Scenario& scenario);

// Largest depot-to-point distance, recomputed from the point list.
Meters farthest_from_depot(const Scenario& scenario);

}  // namespace cooproute
