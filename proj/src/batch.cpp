#include "cooproute/batch.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "cooproute/errors.hpp"
#include "cooproute/scenario_io.hpp"

namespace cooproute {

using nlohmann::ordered_json;

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void validate_batch_spec(const BatchSpec& spec) {
  if (spec.scales.empty()) throw InvalidArgument("batch needs at least one scale");
  if (spec.methods.empty()) throw InvalidArgument("batch needs at least one method");
  if (spec.count < 1) throw InvalidArgument("batch count must be at least 1");
  if (spec.jobs < 1) throw InvalidArgument("batch jobs must be at least 1");
}

BatchResult run_batch(const BatchSpec& spec) {
  validate_batch_spec(spec);
  BatchResult result;
  for (Scale scale : spec.scales) {
    for (int i = 0; i < spec.count; ++i) {
      BatchEntry e;
      e.scale = scale;
      e.report.scenario.seed = spec.seed + static_cast<std::uint64_t>(i);
      e.report.scenario.name =
          std::string(scale_spec(scale).token) + "-" + std::to_string(e.report.scenario.seed);
      result.entries.push_back(std::move(e));
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < result.entries.size(); k = next++) {
      BatchEntry& e = result.entries[k];
      Scenario scenario;
      try {
        scenario = generate_scenario(e.scale, e.report.scenario.seed, spec.overrides);
      } catch (const std::exception& ex) {
        e.error = std::string("generation: ") + ex.what();
        continue;
      }
      e.report = solve_report(scenario, spec.methods, e.report.scenario.seed);
    }
  };
  const auto jobs = std::min<std::size_t>(static_cast<std::size_t>(spec.jobs),
                                          result.entries.size());
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  return result;
}

std::string metrics_csv(const BatchResult& result, const BatchSpec& spec) {
  std::string out = metrics_header() + "\n";
  for (const BatchEntry& e : result.entries) {
    const std::string_view scale = scale_spec(e.scale).token;
    if (!e.error.empty()) {
      // One failed row per requested method keeps the row count fixed.
      for (Method m : spec.methods) {
        MethodOutcome o;
        o.method = m;
        o.status = e.error;
        out += metrics_row(e.report, o, scale) + "\n";
      }
      continue;
    }
    for (const MethodOutcome& o : e.report.outcomes) out += metrics_row(e.report, o, scale) + "\n";
  }
  return out;
}

ordered_json batch_summary(const BatchResult& result, const BatchSpec& spec) {
  ordered_json scales = ordered_json::array();
  for (Scale scale : spec.scales) {
    ordered_json methods = ordered_json::object();
    for (Method m : spec.methods) {
      int rows = 0, failed = 0, time_positive = 0, energy_positive = 0;
      double t_sum = 0, e_sum = 0;
      double t_min = std::numeric_limits<double>::infinity(), t_max = -t_min;
      double e_min = t_min, e_max = -t_min;
      for (const BatchEntry& e : result.entries) {
        if (e.scale != scale) continue;
        ++rows;
        auto it = std::find_if(e.report.outcomes.begin(), e.report.outcomes.end(),
                               [&](const MethodOutcome& o) { return o.method == m; });
        if (it == e.report.outcomes.end() || !it->ok() || !it->improvement) {
          ++failed;
          continue;
        }
        const Improvement& imp = *it->improvement;
        t_sum += imp.time_pct;
        e_sum += imp.energy_pct;
        t_min = std::min(t_min, imp.time_pct);
        t_max = std::max(t_max, imp.time_pct);
        e_min = std::min(e_min, imp.energy_pct);
        e_max = std::max(e_max, imp.energy_pct);
        time_positive += imp.time_pct > 0.0;
        energy_positive += imp.energy_pct > 0.0;
      }
      const int n = rows - failed;
      auto stat = [&](double sum, double lo, double hi, int positive) {
        if (n == 0) return ordered_json(nullptr);
        return ordered_json{{"mean", sum / n}, {"min", lo}, {"max", hi}, {"positive", positive}};
      };
      methods[std::string(to_string(m))] = {
          {"rows", rows},
          {"failed", failed},
          {"time_improvement_pct", stat(t_sum, t_min, t_max, time_positive)},
          {"energy_improvement_pct", stat(e_sum, e_min, e_max, energy_positive)}};
    }
    scales.push_back({{"scale", scale_spec(scale).token}, {"methods", std::move(methods)}});
  }
  ordered_json method_names = ordered_json::array();
  for (Method m : spec.methods) method_names.push_back(std::string(to_string(m)));
  return ordered_json{{"run_id", run_id(spec)},
                      {"count", spec.count},
                      {"seed", spec.seed},
                      {"methods", std::move(method_names)},
                      {"scales", std::move(scales)}};
}

std::string summary_table(const ordered_json& summary) {
  std::ostringstream o;
  o << std::left << std::setw(8) << "scale" << std::setw(10) << "method" << std::setw(6) << "ok"
    << std::setw(28) << "time % mean [min, max]"
    << "energy % mean [min, max]\n";
  auto cell = [](const ordered_json& s) {
    if (s.is_null()) return std::string("-");
    return fixed(s["mean"].get<double>(), 2) + " [" + fixed(s["min"].get<double>(), 2) + ", " +
           fixed(s["max"].get<double>(), 2) + "]";
  };
  for (const auto& sc : summary["scales"]) {
    for (const auto& [name, m] : sc["methods"].items()) {
      const int ok = m["rows"].get<int>() - m["failed"].get<int>();
      o << std::setw(8) << sc["scale"].get<std::string>() << std::setw(10) << name
        << std::setw(6) << (std::to_string(ok) + "/" + std::to_string(m["rows"].get<int>()))
        << std::setw(28) << cell(m["time_improvement_pct"]) << cell(m["energy_improvement_pct"])
        << "\n";
    }
  }
  return o.str();
}

std::string run_id(const BatchSpec& spec) {
  std::string id;
  for (Scale s : spec.scales) id += std::string(id.empty() ? "" : "+") + std::string(scale_spec(s).token);
  id += "-n" + std::to_string(spec.count) + "-s" + std::to_string(spec.seed) + "-";
  for (std::size_t i = 0; i < spec.methods.size(); ++i) {
    id += (i ? "+" : "") + std::string(to_string(spec.methods[i]));
  }
  for (const auto& [k, v] : spec.overrides) id += "-" + k + "=" + v;
  return id;
}

void write_batch(const BatchResult& result, const BatchSpec& spec) {
  std::filesystem::create_directories(spec.output_dir);
  write_file(spec.output_dir / "metrics.csv", metrics_csv(result, spec));
  write_file(spec.output_dir / "summary.json", dump_json(batch_summary(result, spec)));

  std::string timings = "run_id,scenario,method,solve_wall_ms,cover_ms,tsp_ms,evrptw_ms\n";
  const std::string id = run_id(spec);
  for (const BatchEntry& e : result.entries) {
    for (const MethodOutcome& o : e.report.outcomes) {
      const bool staged = o.plan && o.method != Method::Baseline;
      timings += id + "," + e.report.scenario.name + "," + std::string(to_string(o.method)) + "," +
                 fixed(o.wall_ms, 3) + "," + (staged ? fixed(o.plan->timings.cover_ms, 3) : "") +
                 "," + (staged ? fixed(o.plan->timings.tsp_ms, 3) : "") + "," +
                 (staged ? fixed(o.plan->timings.evrptw_ms, 3) : "") + "\n";
    }
  }
  write_file(spec.output_dir / "timings.csv", timings);
}

}  // namespace cooproute
