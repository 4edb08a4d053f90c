// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// rangetap: plan, allocate, simulate and bench from the command line.
//
// Exit codes: 0 success, 2 usage or invalid input, 3 infeasible environment
// or planning failure.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rangetap/bench.hpp"
#include "rangetap/scenario_io.hpp"
#include "rangetap/svg.hpp"

namespace {

using namespace rangetap;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Point parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("expected X,Y but got '" + text + "'");
  try {
    std::size_t used = 0;
    const double x = std::stod(text.substr(0, comma), &used);
    const double y = std::stod(text.substr(comma + 1));
    return {x, y};
  } catch (const std::logic_error&) {
    throw UsageError("expected X,Y but got '" + text + "'");
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct PlanArgs {
  std::string scenario;
  std::string map;
  std::uint64_t seed = 1;
  std::string from;
  std::string to;
  std::string planner = "gos";
  double resolution = 0.0;
  double radius = -1.0;
  std::string svg;
};

int cmd_plan(const PlanArgs& a) {
  const auto planner = parse_planner_kind(a.planner);
  if (!planner) throw UsageError("unknown planner '" + a.planner + "'");
  if (a.scenario.empty() == a.map.empty()) {
    throw UsageError("give exactly one of --scenario or --map");
  }
  Rect bounds;
  ObstacleSet obstacles;
  Point start;
  Point goal;
  double resolution = a.resolution;
  if (!a.scenario.empty()) {
    if (a.from.empty() || a.to.empty()) {
      throw UsageError("--from and --to are required with --scenario");
    }
    const Scenario s = load_scenario(a.scenario);
    double radius = a.radius;
    if (radius < 0.0) radius = s.robots.empty() ? 0.0 : s.robots.front().radius;
    bounds = s.bounds;
    obstacles = ObstacleSet::build(s.obstacles_raw, radius);
    start = parse_point(a.from);
    goal = parse_point(a.to);
    if (resolution <= 0.0) resolution = std::max(bounds.width(), bounds.height()) / 512.0;
  } else {
    const auto kind = parse_map_kind(a.map);
    if (!kind) throw UsageError("unknown map kind '" + a.map + "'");
    PlannerQuery q = make_query(*kind, a.seed);
    bounds = q.map.scenario.bounds;
    start = a.from.empty() ? q.start : parse_point(a.from);
    goal = a.to.empty() ? q.goal : parse_point(a.to);
    obstacles = a.radius >= 0.0 ? ObstacleSet::build(q.map.scenario.obstacles_raw, a.radius)
                                : std::move(q.obstacles);
    if (resolution <= 0.0) resolution = table1_resolution(*kind);
  }

  const PlannerRun run = run_planner(*planner, bounds, obstacles, start, goal, resolution);
  std::cout << "planner: " << a.planner << "\n";
  if (!a.svg.empty()) {
    write_file_atomic(a.svg, plan_svg(bounds, obstacles, run.waypoints, start, goal));
  }
  if (!run.ok) {
    std::cerr << "planning failed: " << run.note << "\n";
    return kExitInfeasible;
  }
  std::cout << "waypoints:\n";
  for (const Point& p : run.waypoints) std::cout << "  " << fmt(p.x) << "," << fmt(p.y) << "\n";
  std::cout << "length_m: " << fmt(run.length) << "\n"
            << "time_s: " << run.time_s << "\n";
  return kExitOk;
}

struct AllocateArgs {
  std::string scenario;
  std::string mode = "rangetap";
  std::string range_check;
  bool eager = false;
  std::string out;
};

int cmd_allocate(const AllocateArgs& a) {
  Scenario s = load_scenario(a.scenario);
  AllocatorKind kind;
  if (a.mode == "rangetap") {
    kind = AllocatorKind::kRangeTap;
  } else if (a.mode == "straightline") {
    kind = AllocatorKind::kStraightline;
  } else {
    throw UsageError("unknown mode '" + a.mode + "'");
  }
  if (!a.range_check.empty()) {
    const auto m = parse_range_check_mode(a.range_check);
    if (!m) throw UsageError("unknown range check '" + a.range_check + "'");
    s.alloc_config.range_check_mode = *m;
  }
  if (a.eager) s.alloc_config.lazy = false;

  const auto [alloc, secs] = run_allocation(s, kind);
  const std::string doc = allocation_to_json(alloc).dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << doc;
  } else {
    write_file_atomic(a.out, doc);
  }
  std::cout << "total_reward,total_distance_m,unassigned,rounds,alloc_time_s,"
               "compute_bid_calls,planner_calls\n"
            << fmt(total_reward(alloc)) << "," << fmt(total_distance(alloc)) << ","
            << alloc.unassigned.size() << "," << alloc.rounds << "," << secs << ","
            << alloc.stats.compute_bid_calls << "," << alloc.stats.planner_calls << "\n";
  return kExitOk;
}

struct SimulateArgs {
  std::string scenario;
  std::string mode = "rangetap";
  std::string svg;
  std::string csv;
  std::string report;
};

void write_mission_outputs(const Scenario& s, const MissionReport& r,
                           const SimulateArgs& a) {
  const std::string csv = report_to_csv(r);
  if (a.csv.empty()) {
    std::cout << csv;
  } else {
    write_file_atomic(a.csv, csv);
  }
  if (!a.report.empty()) write_file_atomic(a.report, report_to_json(r, true).dump(2) + "\n");
  if (!a.svg.empty()) write_file_atomic(a.svg, mission_svg(s, r));
}

int cmd_simulate(const SimulateArgs& a) {
  const Scenario s = load_scenario(a.scenario);
  AllocatorKind kind = AllocatorKind::kRangeTap;
  if (a.mode == "straightline") {
    kind = AllocatorKind::kStraightline;
  } else if (a.mode != "rangetap") {
    throw UsageError("unknown mode '" + a.mode + "'");
  }
  try {
    const MissionReport r = run_mission(s, kind);
    write_mission_outputs(s, r, a);
    if (!r.unassigned_tasks.empty()) {
      std::cerr << r.unassigned_tasks.size() << " task(s) unassigned\n";
    }
    return kExitOk;
  } catch (const MissionFailed& e) {
    write_mission_outputs(s, e.partial(), a);
    throw;
  }
}

struct BenchArgs {
  std::string suite;
  int repeats = 5;
  std::uint64_t seed = 1;
  std::string out = "bench_out";
};

int cmd_bench(const BenchArgs& a) {
  const std::filesystem::path dir(a.out);
  if (a.suite == "table1") {
    Table1Options opts;
    opts.repeats = a.repeats;
    opts.seed = a.seed;
    const auto rows = run_table1(opts);
    const std::string summary = table1_summary_csv(rows);
    write_file_atomic(dir / "table1_instances.csv", table1_instances_csv(rows));
    write_file_atomic(dir / "table1_summary.csv", summary);
    std::cout << summary;
    for (const auto& r : rows) {
      if (!r.run.ok) {
        std::cerr << "failed: " << to_string(r.map) << " #" << r.instance << " "
                  << to_string(r.planner) << ": " << r.run.note << "\n";
      }
    }
  } else if (a.suite == "fig6") {
    Fig6Options opts;
    opts.repeats = a.repeats;
    opts.seed = a.seed;
    const auto rows = run_fig6(opts);
    const std::string summary = fig6_summary_csv(rows);
    write_file_atomic(dir / "fig6_instances.csv", fig6_instances_csv(rows));
    write_file_atomic(dir / "fig6_summary.csv", summary);
    std::cout << summary;
    for (const auto& r : rows) {
      if (!r.ok) {
        std::cerr << "failed: tasks=" << r.tasks << " #" << r.instance << " "
                  << to_string(r.method) << ": " << r.note << "\n";
      }
    }
  } else {
    throw UsageError("unknown suite '" + a.suite + "'");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-constrained multi-robot task allocation and global path planning"};
  app.require_subcommand(1);

  PlanArgs plan;
  auto* p = app.add_subcommand("plan", "Plan one start/goal query");
  p->add_option("--scenario", plan.scenario, "Scenario file");
  p->add_option("--map", plan.map, "Generated map kind: small, medium, large, random");
  p->add_option("--seed", plan.seed, "Map seed");
  p->add_option("--from", plan.from, "Start X,Y");
  p->add_option("--to", plan.to, "Goal X,Y");
  p->add_option("--planner", plan.planner, "gos, astar or visgraph");
  p->add_option("--resolution", plan.resolution, "Grid resolution for astar (m)");
  p->add_option("--radius", plan.radius, "Inflation radius (m)");
  p->add_option("--svg", plan.svg, "Write an SVG plot");

  AllocateArgs alloc;
  auto* al = app.add_subcommand("allocate", "Allocate tasks to a fleet");
  al->add_option("--scenario", alloc.scenario, "Scenario file")->required();
  al->add_option("--mode", alloc.mode, "rangetap or straightline");
  al->add_option("--range-check", alloc.range_check,
                 "paper-literal, no-return or with-return");
  al->add_flag("--eager", alloc.eager, "Recompute every bid each round");
  al->add_option("--out", alloc.out, "Write the allocation JSON here");

  SimulateArgs sim;
  auto* si = app.add_subcommand("simulate", "Allocate and replay a mission");
  si->add_option("--scenario", sim.scenario, "Scenario file")->required();
  si->add_option("--mode", sim.mode, "rangetap or straightline");
  si->add_option("--svg", sim.svg, "Write an SVG plot");
  si->add_option("--csv", sim.csv, "Write the metrics CSV here (default stdout)");
  si->add_option("--report", sim.report, "Write the mission report JSON here");

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Run a benchmark suite");
  be->add_option("--suite", bench.suite, "table1 or fig6")->required();
  be->add_option("--repeats", bench.repeats, "Instances per cell")->check(CLI::PositiveNumber);
  be->add_option("--seed", bench.seed, "Suite seed");
  be->add_option("--out", bench.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*p) return cmd_plan(plan);
    if (*al) return cmd_allocate(alloc);
    if (*si) return cmd_simulate(sim);
    if (*be) return cmd_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const AllocationError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const PlannerError& e) {
    std::cerr << "planning failed: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const GeometryError& e) {
    std::cerr << "invalid geometry: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OracleError& e) {
    std::cerr << "planning failed: " << e.what() << "\n";
    return kExitInfeasible;
  }
  return kExitUsage;
}
