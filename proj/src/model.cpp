#include "cooproute/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cooproute/errors.hpp"
#include "cooproute/scenario_io.hpp"

namespace cooproute {

Uncoverable::Uncoverable(std::vector<int> targets)
    : PlanningError([&] {
        std::ostringstream msg;
        msg << "targets outside every cover set:";
        for (int t : targets) msg << ' ' << t;
        return msg.str();
      }()),
      targets_(std::move(targets)) {}

UnassignedPoint::UnassignedPoint(int point)
    : PlanningError("point " + std::to_string(point) +
                    " is not covered by any refuel stop"),
      point_(point) {}

SchemaError::SchemaError(std::string field, const std::string& what)
    : std::runtime_error("scenario field '" + field + "': " + what),
      field_(std::move(field)) {}

VehicleSpec default_uav() {
  VehicleSpec uav;
  uav.kind = VehicleKind::Uav;
  uav.speed = kDefaultUavSpeed;
  uav.power = PowerModel::default_uav();
  // Fuel for a round trip of twice the default coverage radius at cruise.
  uav.fuel_capacity =
      2.0 * kDefaultCoverageRadius / uav.speed * uav.cruise_power();
  uav.recharge_rate = uav.fuel_capacity / kDefaultFullChargeSeconds;
  return uav;
}

VehicleSpec default_ugv() {
  VehicleSpec ugv;
  ugv.kind = VehicleKind::Ugv;
  ugv.speed = kDefaultUgvSpeed;
  ugv.fuel_capacity = 0.0;
  ugv.recharge_rate = 0.0;
  ugv.power = PowerModel::default_ugv();
  return ugv;
}

const Point& Scenario::node(PointId id) const {
  if (id == kDepot) return depot;
  if (id < 1 || static_cast<std::size_t>(id) > points.size()) {
    throw InvalidArgument("unknown point id " + std::to_string(id));
  }
  return points[static_cast<std::size_t>(id) - 1];
}

void validate_scenario(const Scenario& s) {
  auto inside = [&](const Point& p) {
    return p.x >= 0.0 && p.y >= 0.0 && p.x <= s.map_extent &&
           p.y <= s.map_extent;
  };
  if (!(s.map_extent >= 0.0)) throw InvalidArgument("map extent must be non-negative");
  if (s.depot.id != kDepot) throw InvalidArgument("depot must have id 0");
  if (!inside(s.depot)) throw InvalidArgument("depot outside the map");
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const Point& p = s.points[i];
    if (p.id != static_cast<PointId>(i + 1)) {
      throw InvalidArgument("point ids must be dense from 1, found " +
                            std::to_string(p.id) + " at position " +
                            std::to_string(i));
    }
    if (!inside(p)) {
      throw InvalidArgument("point " + std::to_string(p.id) + " outside the map");
    }
  }
  if (!(s.uav.speed > 0.0) || !(s.ugv.speed > 0.0)) {
    throw InvalidArgument("vehicle speeds must be positive");
  }
  if (!(s.uav.speed > s.ugv.speed)) {
    throw InvalidArgument("UAV must be faster than the UGV");
  }
  if (!(s.uav.fuel_capacity > 0.0) || !std::isfinite(s.uav.fuel_capacity)) {
    throw InvalidArgument("UAV fuel capacity must be finite and positive");
  }
  if (!(s.uav.recharge_rate > 0.0)) {
    throw InvalidArgument("UAV recharge rate must be positive");
  }
  if (s.uav.cruise_power() <= 0.0 || s.ugv.cruise_power() <= 0.0) {
    throw InvalidArgument("power draw must be positive at cruise speed");
  }
}

TravelMatrix::TravelMatrix(const Scenario& scenario)
    : TravelMatrix([&] {
        std::vector<Point> nodes;
        nodes.reserve(scenario.node_count());
        nodes.push_back(scenario.depot);
        nodes.insert(nodes.end(), scenario.points.begin(), scenario.points.end());
        return nodes;
      }()) {}

TravelMatrix::TravelMatrix(const std::vector<Point>& nodes)
    : size_(nodes.size()), dist_(nodes.size() * nodes.size(), 0.0) {
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = i + 1; j < size_; ++j) {
      const Meters d = std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y);
      dist_[i * size_ + j] = d;
      dist_[j * size_ + i] = d;
    }
  }
}

Meters TravelMatrix::distance(PointId i, PointId j) const {
  if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= size_ ||
      static_cast<std::size_t>(j) >= size_) {
    throw InvalidArgument("unknown point id in travel matrix");
  }
  return dist_[static_cast<std::size_t>(i) * size_ + static_cast<std::size_t>(j)];
}

Seconds seconds_for(Meters distance, double speed) {
  if (!(speed > 0.0)) throw InvalidArgument("speed must be positive");
  // The epsilon keeps exact quotients such as 9000 / 4.5 from rounding up.
  return static_cast<Seconds>(std::ceil(distance / speed - 1e-9));
}

Seconds travel_time(const TravelMatrix& matrix, PointId i, PointId j,
                    double speed) {
  if (!(speed > 0.0)) throw InvalidArgument("speed must be positive");
  return seconds_for(matrix.distance(i, j), speed);
}

namespace {

constexpr std::array<ScaleSpec, 3> kScales{{
    {Scale::Small, "small", 16000.0, 30, 1.5},
    {Scale::Medium, "medium", 25000.0, 60, 3.0},
    {Scale::Large, "large", 40000.0, 100, 9.0},
}};

// Portable uniform draw in [0, 1); std::uniform_real_distribution is not
// specified bit-for-bit across standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

const ScaleSpec& scale_spec(Scale scale) {
  return kScales[static_cast<std::size_t>(scale)];
}

std::optional<Scale> parse_scale(std::string_view token) {
  for (const auto& s : kScales) {
    if (s.token == token) return s.scale;
  }
  return std::nullopt;
}

Scenario generate_scenario(Scale scale, std::uint64_t seed,
                           const Overrides& overrides) {
  const ScaleSpec& spec = scale_spec(scale);

  // Parameters live in a scenario-shaped document so --set paths are the
  // same for generation and for solving.
  nlohmann::ordered_json doc;
  doc["name"] = std::string(spec.token) + "-" + std::to_string(seed);
  doc["map_extent_m"] = spec.map_extent;
  doc["seed"] = seed;
  doc["num_points"] = spec.num_points;
  const VehicleSpec uav = default_uav();
  doc["uav"] = {{"speed_mps", uav.speed}, {"fuel_capacity_j", uav.fuel_capacity}};
  doc["ugv"] = {{"speed_mps", kDefaultUgvSpeed}};
  apply_overrides(doc, overrides);
  if (!doc["uav"].contains("recharge_rate_w")) {
    doc["uav"]["recharge_rate_w"] =
        doc["uav"]["fuel_capacity_j"].get<double>() / kDefaultFullChargeSeconds;
  }
  const int n = doc["num_points"].get<int>();
  if (n < 1) throw InvalidArgument("num_points must be at least 1");
  doc.erase("num_points");
  doc["depot"] = {{"x", 0.0}, {"y", 0.0}};
  doc["points"] = nlohmann::ordered_json::array();

  Scenario scenario = scenario_from_json(doc);
  const Meters radius = coverage_radius(scenario.uav);
  const Meters extent = scenario.map_extent;

  std::mt19937_64 rng(scenario.seed);
  for (int attempt = 0; attempt < kGenerationRetries; ++attempt) {
    scenario.depot = Point{kDepot, uniform01(rng) * extent, uniform01(rng) * extent};
    scenario.points.clear();
    for (int i = 1; i <= n; ++i) {
      scenario.points.push_back(
          Point{i, uniform01(rng) * extent, uniform01(rng) * extent});
    }
    if (farthest_from_depot(scenario) > radius) {
      validate_scenario(scenario);
      return scenario;
    }
  }
  throw GenerationFailed(
      "no scenario with a point beyond the UAV coverage radius after " +
      std::to_string(kGenerationRetries) + " attempts");
}

double scale_factor(const Scenario& scenario) {
  const Meters r = coverage_radius(scenario.uav);
  if (scenario.map_extent == 0.0) return 0.0;
  if (r <= 0.0) return std::numeric_limits<double>::infinity();
  return scenario.map_extent * scenario.map_extent / (std::numbers::pi * r * r);
}

Meters farthest_from_depot(const Scenario& scenario) {
  Meters best = 0.0;
  for (const Point& p : scenario.points) {
    best = std::max(best, std::hypot(p.x - scenario.depot.x, p.y - scenario.depot.y));
  }
  return best;
}

}  // namespace cooproute
