#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cooproute/report.hpp"

namespace cooproute {

struct BatchSpec {
  std::vector<Scale> scales{Scale::Small};
  int count = 10;  // scenarios per scale, seeds seed .. seed + count - 1
  std::uint64_t seed = 1;
  std::vector<Method> methods{Method::Greedy, Method::Exact, Method::Baseline};
  std::filesystem::path output_dir;
  int jobs = 1;
  Overrides overrides;
};

// Throws InvalidArgument on an empty method or scale list or a count or
// job limit below one.
void validate_batch_spec(const BatchSpec& spec);

struct BatchEntry {
  Scale scale = Scale::Small;
  PlanReport report;
  std::string error;  // scenario generation failure; report is empty
};

struct BatchResult {
  std::vector<BatchEntry> entries;  // ordered by (scale, seed)
};

// Entries run concurrently up to spec.jobs; the result order does not
// depend on scheduling.
BatchResult run_batch(const BatchSpec& spec);

std::string metrics_csv(const BatchResult& result, const BatchSpec& spec);

// Per scale and method: row counts and mean/min/max improvements.
nlohmann::ordered_json batch_summary(const BatchResult& result, const BatchSpec& spec);

std::string summary_table(const nlohmann::ordered_json& summary);

// Stable identifier for a spec, used to key the timings sidecar.
std::string run_id(const BatchSpec& spec);

// Writes metrics.csv, summary.json and the timings.csv sidecar into
// spec.output_dir.
void write_batch(const BatchResult& result, const BatchSpec& spec);

}  // namespace cooproute
