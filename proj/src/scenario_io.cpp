#include "cooproute/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "cooproute/errors.hpp"

namespace cooproute {

using Json = nlohmann::ordered_json;

namespace {

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

double number(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_number()) throw SchemaError(path.empty() ? key : path + "." + key, "expected a number");
  return v.get<double>();
}

std::vector<double> coefficient_list(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of numbers");
  std::vector<double> out;
  for (const Json& c : v) {
    if (!c.is_number()) throw SchemaError(path, "expected an array of numbers");
    out.push_back(c.get<double>());
  }
  return out;
}

Json power_json(const PowerModel& model) {
  Json out;
  out["coefficients"] = model.coefficients();
  if (std::isfinite(model.speed_ceiling())) out["speed_ceiling_mps"] = model.speed_ceiling();
  return out;
}

}  // namespace

Json scenario_to_json(const Scenario& s) {
  Json doc;
  doc["name"] = s.name;
  doc["map_extent_m"] = s.map_extent;
  doc["seed"] = s.seed;
  doc["depot"] = {{"x", s.depot.x}, {"y", s.depot.y}};
  Json points = Json::array();
  for (const Point& p : s.points) points.push_back({{"id", p.id}, {"x", p.x}, {"y", p.y}});
  doc["points"] = std::move(points);
  doc["uav"] = {{"speed_mps", s.uav.speed},
                {"fuel_capacity_j", s.uav.fuel_capacity},
                {"recharge_rate_w", s.uav.recharge_rate}};
  doc["ugv"] = {{"speed_mps", s.ugv.speed}};
  const bool custom_uav = !(s.uav.power == PowerModel::default_uav());
  const bool custom_ugv = !(s.ugv.power == PowerModel::default_ugv());
  if (custom_uav || custom_ugv) {
    Json pm;
    if (custom_uav) pm["uav"] = power_json(s.uav.power);
    if (custom_ugv) pm["ugv"] = power_json(s.ugv.power);
    doc["power_model"] = std::move(pm);
  }
  return doc;
}

Scenario scenario_from_json(const Json& doc) {
  if (!doc.is_object()) throw SchemaError("$", "scenario must be a JSON object");
  Scenario s;
  const Json& name = field(doc, "name", "");
  if (!name.is_string()) throw SchemaError("name", "expected a string");
  s.name = name.get<std::string>();
  s.map_extent = number(doc, "map_extent_m", "");
  const Json& seed = field(doc, "seed", "");
  if (!seed.is_number_integer() || (seed.is_number_integer() && !seed.is_number_unsigned() && seed.get<long long>() < 0)) {
    throw SchemaError("seed", "expected a non-negative integer");
  }
  s.seed = seed.get<std::uint64_t>();

  const Json& depot = field(doc, "depot", "");
  s.depot = Point{kDepot, number(depot, "x", "depot"), number(depot, "y", "depot")};

  const Json& points = field(doc, "points", "");
  if (!points.is_array()) throw SchemaError("points", "expected an array");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string path = "points[" + std::to_string(i) + "]";
    const Json& id = field(points[i], "id", path);
    if (!id.is_number_integer()) throw SchemaError(path + ".id", "expected an integer");
    s.points.push_back(Point{id.get<int>(), number(points[i], "x", path),
                             number(points[i], "y", path)});
  }

  const Json& uav = field(doc, "uav", "");
  s.uav = default_uav();
  s.uav.speed = number(uav, "speed_mps", "uav");
  s.uav.fuel_capacity = number(uav, "fuel_capacity_j", "uav");
  s.uav.recharge_rate = number(uav, "recharge_rate_w", "uav");
  const Json& ugv = field(doc, "ugv", "");
  s.ugv = default_ugv();
  s.ugv.speed = number(ugv, "speed_mps", "ugv");

  if (auto pm = doc.find("power_model"); pm != doc.end()) {
    if (!pm->is_object()) throw SchemaError("power_model", "expected an object");
    try {
      if (auto u = pm->find("uav"); u != pm->end()) {
        const double ceiling = u->contains("speed_ceiling_mps")
                                   ? number(*u, "speed_ceiling_mps", "power_model.uav")
                                   : kUavSpeedCeiling;
        s.uav.power = PowerModel(PowerModelKind::UavCubic,
                                 coefficient_list(field(*u, "coefficients", "power_model.uav"),
                                                  "power_model.uav.coefficients"),
                                 ceiling);
      }
      if (auto g = pm->find("ugv"); g != pm->end()) {
        s.ugv.power = PowerModel(PowerModelKind::UgvAffine,
                                 coefficient_list(field(*g, "coefficients", "power_model.ugv"),
                                                  "power_model.ugv.coefficients"),
                                 std::numeric_limits<double>::infinity());
      }
    } catch (const InvalidArgument& e) {
      throw SchemaError("power_model", e.what());
    }
  }

  try {
    validate_scenario(s);
  } catch (const InvalidArgument& e) {
    throw SchemaError("$", e.what());
  }
  return s;
}

void apply_overrides(Json& doc, const Overrides& overrides) {
  for (const auto& [path, raw] : overrides) {
    if (path.empty()) throw InvalidArgument("empty override path");
    Json* node = &doc;
    std::stringstream parts(path);
    std::string key;
    std::vector<std::string> keys;
    while (std::getline(parts, key, '.')) {
      if (key.empty()) throw InvalidArgument("malformed override path '" + path + "'");
      keys.push_back(key);
    }
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
      Json& next = (*node)[keys[i]];
      if (next.is_null()) next = Json::object();
      if (!next.is_object()) {
        throw InvalidArgument("override path '" + path + "' crosses a non-object");
      }
      node = &next;
    }
    Json value = Json::parse(raw, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) value = raw;
    (*node)[keys.back()] = std::move(value);
  }
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  Json doc = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw SchemaError("$", "not valid JSON");
  return scenario_from_json(doc);
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  out << dump_json(scenario_to_json(scenario));
  if (!out) throw std::ios_base::failure("write failed for " + path.string());
}

}  // namespace cooproute
