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

#include "rangetap/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace rangetap {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x, const char* format = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

// Notes end up in CSV cells.
std::string csv_safe(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '"') c = ' ';
  }
  return s;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t suite_seed, std::uint64_t counter) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = suite_seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int bench_threads() {
  if (const char* env = std::getenv("RANGETAP_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

const char* to_string(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::kGos: return "gos";
    case PlannerKind::kAstar: return "astar";
    case PlannerKind::kVisgraph: return "visgraph";
  }
  return "?";
}

std::optional<PlannerKind> parse_planner_kind(std::string_view text) {
  if (text == "gos") return PlannerKind::kGos;
  if (text == "astar") return PlannerKind::kAstar;
  if (text == "visgraph") return PlannerKind::kVisgraph;
  return std::nullopt;
}

PlannerQuery make_query(MapKind kind, std::uint64_t seed) {
  PlannerQuery q;
  q.kind = kind;
  q.seed = seed;
  q.map = generate_map(kind, seed);
  q.obstacles = ObstacleSet::build(q.map.scenario.obstacles_raw, q.map.robot_radius);
  std::mt19937_64 rng(derive_seed(seed, 0x51));
  q.start = sample_free_point(q.obstacles, q.map.start_region, q.map.robot_radius, rng);
  q.goal = sample_free_point(q.obstacles, q.map.goal_region, q.map.robot_radius, rng);
  return q;
}

double table1_resolution(MapKind kind) {
  switch (kind) {
    case MapKind::kSmall: return 0.1;
    case MapKind::kMedium: return 0.5;
    case MapKind::kLarge: return 1.0;
    case MapKind::kRandom: return 0.5;
  }
  return 1.0;
}

PlannerRun run_planner(PlannerKind planner, const Rect& bounds,
                       const ObstacleSet& obstacles, const Point& start,
                       const Point& goal, double resolution) {
  PlannerRun run;
  try {
    switch (planner) {
      case PlannerKind::kGos: {
        const auto t0 = Clock::now();
        PlanResult r = plan_global_path(start, goal, obstacles);
        run.time_s = seconds_since(t0);
        if (r.ok()) {
          run.ok = true;
          run.waypoints = r.path->waypoints;
        } else {
          run.note = std::string(to_string(r.status)) + " " + r.diagnostic;
        }
        break;
      }
      case PlannerKind::kVisgraph: {
        const auto t0 = Clock::now();
        PlannedPath p = visibility_dijkstra(start, goal, obstacles);
        run.time_s = seconds_since(t0);
        run.ok = true;
        run.waypoints = std::move(p.waypoints);
        break;
      }
      case PlannerKind::kAstar: {
        const OccupancyGrid grid = rasterize(obstacles, bounds, resolution);
        const auto s = snap_to_free(grid, start);
        const auto g = snap_to_free(grid, goal);
        if (!s || !g) {
          run.note = "no free cell near an endpoint";
          break;
        }
        const auto t0 = Clock::now();
        auto p = grid_astar(grid, s->point, g->point);
        run.time_s = seconds_since(t0);
        if (!p) {
          run.note = "grid search found no path";
          break;
        }
        run.ok = true;
        run.waypoints.push_back(start);
        for (const Point& w : p->waypoints) {
          if (!(w == run.waypoints.back())) run.waypoints.push_back(w);
        }
        if (!(goal == run.waypoints.back())) run.waypoints.push_back(goal);
        break;
      }
    }
  } catch (const std::exception& e) {
    run.ok = false;
    run.note = e.what();
  }
  if (run.ok) run.length = path_length(run.waypoints);
  return run;
}

PlannerRun run_planner(PlannerKind planner, const PlannerQuery& query,
                       double resolution) {
  return run_planner(planner, query.map.scenario.bounds, query.obstacles,
                     query.start, query.goal, resolution);
}

std::vector<Table1Row> run_table1(const Table1Options& opts) {
  struct Job {
    MapKind map;
    int instance;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  std::uint64_t counter = 0;
  for (MapKind kind : opts.maps) {
    for (int r = 0; r < opts.repeats; ++r) {
      jobs.push_back({kind, r, derive_seed(opts.seed, counter++)});
    }
  }
  constexpr PlannerKind kPlanners[] = {PlannerKind::kGos, PlannerKind::kAstar,
                                       PlannerKind::kVisgraph};
  std::vector<Table1Row> rows(jobs.size() * 3);
  parallel_for(jobs.size(), opts.threads > 0 ? opts.threads : bench_threads(),
               [&](std::size_t i) {
                 const Job& job = jobs[i];
                 const auto it = opts.resolution.find(job.map);
                 const double res = it != opts.resolution.end()
                                        ? it->second
                                        : table1_resolution(job.map);
                 PlannerQuery q;
                 std::string setup_error;
                 try {
                   q = make_query(job.map, job.seed);
                 } catch (const std::exception& e) {
                   setup_error = e.what();
                 }
                 for (std::size_t k = 0; k < 3; ++k) {
                   Table1Row& row = rows[i * 3 + k];
                   row.map = job.map;
                   row.instance = job.instance;
                   row.seed = job.seed;
                   row.planner = kPlanners[k];
                   if (setup_error.empty()) {
                     row.run = run_planner(kPlanners[k], q, res);
                   } else {
                     row.run.note = setup_error;
                   }
                 }
               });
  return rows;
}

std::string table1_instances_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << kTable1InstancesHeader << "\n";
  for (const Table1Row& r : rows) {
    os << to_string(r.map) << "," << r.instance << "," << r.seed << ","
       << to_string(r.planner) << "," << (r.run.ok ? "true" : "false") << ","
       << num(r.run.length) << "," << num(r.run.time_s, "%.9f") << ","
       << csv_safe(r.run.note) << "\n";
  }
  return os.str();
}

std::string table1_summary_csv(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << kTable1SummaryHeader << "\n";
  std::vector<std::pair<MapKind, PlannerKind>> keys;
  for (const Table1Row& r : rows) {
    const std::pair key{r.map, r.planner};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  for (const auto& [map, planner] : keys) {
    int runs = 0;
    int failures = 0;
    double time = 0.0;
    double length = 0.0;
    for (const Table1Row& r : rows) {
      if (r.map != map || r.planner != planner) continue;
      ++runs;
      if (!r.run.ok) {
        ++failures;
        continue;
      }
      time += r.run.time_s;
      length += r.run.length;
    }
    const int ok = runs - failures;
    os << to_string(map) << "," << to_string(planner) << "," << runs << ","
       << failures << "," << num(ok ? time / ok : 0.0, "%.9f") << ","
       << num(ok ? length / ok : 0.0) << "\n";
  }
  return os.str();
}

std::vector<Fig6Row> run_fig6(const Fig6Options& opts) {
  struct Job {
    int tasks;
    int instance;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  std::uint64_t counter = 0;
  for (int n : opts.task_counts) {
    for (int r = 0; r < opts.repeats; ++r) {
      jobs.push_back({n, r, derive_seed(opts.seed, counter++)});
    }
  }
  constexpr AllocatorKind kMethods[] = {AllocatorKind::kRangeTap,
                                        AllocatorKind::kStraightline};
  std::vector<Fig6Row> rows(jobs.size() * 2);
  parallel_for(
      jobs.size(), opts.threads > 0 ? opts.threads : bench_threads(),
      [&](std::size_t i) {
        const Job& job = jobs[i];
        Scenario s;
        std::string setup_error;
        try {
          const GeneratedMap map = generate_map(MapKind::kLarge, job.seed);
          FleetParams fleet;
          fleet.robots = opts.robots;
          fleet.tasks = job.tasks;
          fleet.capacity = opts.capacity;
          fleet.budgets = opts.budgets;
          s = populate(map, fleet, derive_seed(job.seed, 0xf6));
          s.alloc_config.range_check_mode = opts.mode;
        } catch (const std::exception& e) {
          setup_error = e.what();
        }
        for (std::size_t k = 0; k < 2; ++k) {
          Fig6Row& row = rows[i * 2 + k];
          row.tasks = job.tasks;
          row.instance = job.instance;
          row.seed = job.seed;
          row.method = kMethods[k];
          if (!setup_error.empty()) {
            row.note = setup_error;
            continue;
          }
          try {
            const auto [alloc, secs] = run_allocation(s, kMethods[k]);
            row.ok = true;
            row.alloc_time_s = secs;
            row.unassigned = static_cast<int>(alloc.unassigned.size());
            row.assigned = job.tasks - row.unassigned;
            row.total_distance = total_distance(alloc);
            row.total_reward = total_reward(alloc);
          } catch (const std::exception& e) {
            row.note = e.what();
          }
        }
      });
  return rows;
}

std::string fig6_instances_csv(const std::vector<Fig6Row>& rows) {
  std::ostringstream os;
  os << kFig6InstancesHeader << "\n";
  for (const Fig6Row& r : rows) {
    os << r.tasks << "," << r.instance << "," << r.seed << ","
       << to_string(r.method) << "," << (r.ok ? "true" : "false") << ","
       << r.assigned << "," << r.unassigned << "," << num(r.total_distance)
       << "," << num(r.total_reward) << "," << num(r.alloc_time_s, "%.9f")
       << "," << csv_safe(r.note) << "\n";
  }
  return os.str();
}

std::string fig6_summary_csv(const std::vector<Fig6Row>& rows) {
  std::ostringstream os;
  os << kFig6SummaryHeader << "\n";
  std::vector<std::pair<int, AllocatorKind>> keys;
  for (const Fig6Row& r : rows) {
    const std::pair key{r.tasks, r.method};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  for (const auto& [tasks, method] : keys) {
    int runs = 0;
    int failures = 0;
    double time = 0.0;
    double dist = 0.0;
    double unassigned = 0.0;
    for (const Fig6Row& r : rows) {
      if (r.tasks != tasks || r.method != method) continue;
      ++runs;
      if (!r.ok) {
        ++failures;
        continue;
      }
      time += r.alloc_time_s;
      dist += r.total_distance;
      unassigned += r.unassigned;
    }
    const int ok = runs - failures;
    os << tasks << "," << to_string(method) << "," << runs << "," << failures
       << "," << num(ok ? time / ok : 0.0, "%.9f") << ","
       << num(ok ? dist / ok : 0.0) << "," << num(ok ? unassigned / ok : 0.0)
       << "\n";
  }
  return os.str();
}

}  // namespace rangetap
