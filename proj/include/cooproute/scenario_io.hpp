#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "cooproute/model.hpp"

namespace cooproute {

nlohmann::ordered_json scenario_to_json(const Scenario& scenario);

// Throws SchemaError naming the offending field.
Scenario scenario_from_json(const nlohmann::ordered_json& doc);

// Applies dotted-path overrides ("uav.speed_mps=12") to a JSON document.
// Values parse as JSON when possible and fall back to strings.
void apply_overrides(nlohmann::ordered_json& doc, const Overrides& overrides);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

std::string dump_json(const nlohmann::ordered_json& doc);

}  // namespace cooproute
