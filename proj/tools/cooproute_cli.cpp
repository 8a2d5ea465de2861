// cooproute: scenario generation, cooperative UAV-UGV planning and batch
// benchmarking.
//
// Exit codes: 0 success or feasible plan, 2 infeasible plan, 1 usage, I/O
// or schema error.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cooproute/batch.hpp"
#include "cooproute/errors.hpp"
#include "cooproute/report.hpp"
#include "cooproute/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace cooproute;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Overrides parse_overrides(const std::vector<std::string>& items) {
  Overrides out;
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("--set expects key=value, got '" + item + "'");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

Scale scale_arg(const std::string& token) {
  if (auto s = parse_scale(token)) return *s;
  throw UsageError("unknown scale '" + token + "' (expected small, medium or large)");
}

Method method_arg(const std::string& token) {
  if (auto m = parse_method(token)) return *m;
  throw UsageError("unknown method '" + token + "' (expected greedy, exact or baseline)");
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

fs::path with_suffix(const fs::path& path, const std::string& suffix) {
  fs::path p = path;
  p.replace_extension();
  return p.string() + suffix;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative UAV-UGV routing planner"};
  app.require_subcommand(1);

  std::string gen_scale = "small", gen_out;
  std::uint64_t gen_seed = 1;
  std::vector<std::string> gen_set;
  auto* gen = app.add_subcommand("generate", "Generate a random scenario");
  gen->add_option("--scale", gen_scale, "small, medium or large")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "Scenario JSON path")->required();
  gen->add_option("--set", gen_set, "Override key=value (dotted scenario JSON path)");

  std::string solve_method = "exact", solve_in, solve_out, solve_svg;
  std::uint64_t solve_seed = 0;
  auto* solve = app.add_subcommand("solve", "Plan a scenario and write a report and route plot");
  solve->add_option("--method", solve_method, "greedy, exact or baseline")->capture_default_str();
  solve->add_option("-i,--input", solve_in, "Scenario JSON path")->required();
  solve->add_option("-o,--output", solve_out, "Report JSON path")->required();
  solve->add_option("--svg", solve_svg, "Route plot path (default: report path with .svg)");
  solve->add_option("--seed", solve_seed, "Seed for randomized heuristics")->capture_default_str();

  std::string batch_scales = "small", batch_methods = "greedy,exact,baseline", batch_out;
  BatchSpec spec;
  std::vector<std::string> batch_set;
  auto* batch = app.add_subcommand("batch", "Benchmark seeded scenarios and write metrics");
  batch->add_option("--scale", batch_scales, "Comma-separated scales")->capture_default_str();
  batch->add_option("--count", spec.count, "Scenarios per scale")->capture_default_str();
  batch->add_option("--seed", spec.seed, "First scenario seed")->capture_default_str();
  batch->add_option("--methods", batch_methods, "Comma-separated methods")->capture_default_str();
  batch->add_option("-o,--output", batch_out, "Output directory")->required();
  batch->add_option("--jobs", spec.jobs, "Concurrent scenarios")->capture_default_str();
  batch->add_option("--set", batch_set, "Override key=value applied to every scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*gen) {
      const Scenario s = generate_scenario(scale_arg(gen_scale), gen_seed, parse_overrides(gen_set));
      if (fs::path(gen_out).has_parent_path()) fs::create_directories(fs::path(gen_out).parent_path());
      save_scenario(s, gen_out);
      std::cout << "wrote " << gen_out << " (" << s.points.size() << " points)\n";
      return kExitOk;
    }

    if (*solve) {
      const Method method = method_arg(solve_method);
      const Scenario s = load_scenario(solve_in);
      const PlanReport report = solve_report(s, {method}, solve_seed);
      write_text(solve_out, dump_json(report_to_json(report)));
      write_text(with_suffix(solve_out, ".timings.json"), dump_json(timings_to_json(report)));
      const MethodOutcome& out = report.outcomes.front();
      if (out.plan) {
        write_text(solve_svg.empty() ? with_suffix(solve_out, ".svg") : fs::path(solve_svg),
                   route_svg(s, *out.plan));
      }
      if (!out.ok()) {
        std::cerr << "infeasible: " << out.status << "\n";
        return kExitInfeasible;
      }
      std::cout << to_string(method) << ": task time " << out.plan->task_time << " s, energy "
                << fixed(out.plan->total_energy / 1e6, 2) << " MJ";
      if (out.improvement) {
        std::cout << ", improvement " << fixed(out.improvement->time_pct, 2) << "% time, "
                  << fixed(out.improvement->energy_pct, 2) << "% energy";
      }
      std::cout << "\n";
      return kExitOk;
    }

    if (*batch) {
      spec.scales.clear();
      for (const std::string& t : split(batch_scales)) spec.scales.push_back(scale_arg(t));
      spec.methods.clear();
      for (const std::string& t : split(batch_methods)) spec.methods.push_back(method_arg(t));
      spec.output_dir = batch_out;
      spec.overrides = parse_overrides(batch_set);
      validate_batch_spec(spec);
      const BatchResult result = run_batch(spec);
      write_batch(result, spec);
      std::cout << summary_table(batch_summary(result, spec));
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitError;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitError;
  } catch (const PlanningError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
