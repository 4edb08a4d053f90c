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

// Benchmark suites: planner comparison ("table1") and allocation scaling
// ("fig6"). Each suite draws per-instance seeds from a counter so any single
// instance can be rerun in isolation.

#ifndef RANGETAP_BENCH_HPP_
#define RANGETAP_BENCH_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rangetap/sim.hpp"

namespace rangetap {

std::uint64_t derive_seed(std::uint64_t suite_seed, std::uint64_t counter);

// Worker count: RANGETAP_THREADS if set and positive, otherwise the
// hardware concurrency.
int bench_threads();

// Runs body(0..n-1) on up to `threads` workers. Exceptions propagate after
// all workers stop.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body);

enum class PlannerKind { kGos, kAstar, kVisgraph };
const char* to_string(PlannerKind kind);
std::optional<PlannerKind> parse_planner_kind(std::string_view text);

// One start/goal query on a generated map. The obstacle set is inflated by
// the map's robot radius.
struct PlannerQuery {
  MapKind kind = MapKind::kSmall;
  std::uint64_t seed = 0;
  GeneratedMap map;
  ObstacleSet obstacles;
  Point start;
  Point goal;
};
PlannerQuery make_query(MapKind kind, std::uint64_t seed);

struct PlannerRun {
  bool ok = false;
  double length = 0.0;
  double time_s = 0.0;  // search only; inflation and rasterization excluded
  std::vector<Point> waypoints;
  std::string note;
};

// Grid resolution used by the table1 suite for each map class.
double table1_resolution(MapKind kind);

// Runs one planner on a query. `resolution` applies to kAstar only. A*
// endpoints are snapped to the nearest free cell and the raw endpoints are
// joined to the grid path.
PlannerRun run_planner(PlannerKind planner, const PlannerQuery& query,
                       double resolution);
PlannerRun run_planner(PlannerKind planner, const Rect& bounds,
                       const ObstacleSet& obstacles, const Point& start,
                       const Point& goal, double resolution);

struct Table1Options {
  int repeats = 5;
  std::uint64_t seed = 1;
  std::vector<MapKind> maps{MapKind::kSmall, MapKind::kMedium, MapKind::kLarge};
  std::map<MapKind, double> resolution;  // overrides table1_resolution
  int threads = 0;                       // 0: bench_threads()
};

struct Table1Row {
  MapKind map = MapKind::kSmall;
  int instance = 0;
  std::uint64_t seed = 0;
  PlannerKind planner = PlannerKind::kGos;
  PlannerRun run;
};

std::vector<Table1Row> run_table1(const Table1Options& opts);

inline constexpr const char* kTable1InstancesHeader =
    "map,instance,seed,planner,ok,length_m,time_s,note";
inline constexpr const char* kTable1SummaryHeader =
    "map,planner,runs,failures,mean_time_s,mean_length_m";
std::string table1_instances_csv(const std::vector<Table1Row>& rows);
std::string table1_summary_csv(const std::vector<Table1Row>& rows);

struct Fig6Options {
  int repeats = 3;
  std::uint64_t seed = 1;
  int robots = 20;
  std::vector<int> task_counts{40, 60, 80, 100};
  std::vector<double> budgets{8000.0, 20000.0};
  int capacity = 10;
  RangeCheckMode mode = RangeCheckMode::kPaperLiteral;
  int threads = 0;
};

struct Fig6Row {
  int tasks = 0;
  int instance = 0;
  std::uint64_t seed = 0;
  AllocatorKind method = AllocatorKind::kRangeTap;
  bool ok = false;
  int assigned = 0;
  int unassigned = 0;
  double total_distance = 0.0;
  double total_reward = 0.0;
  double alloc_time_s = 0.0;
  std::string note;
};

std::vector<Fig6Row> run_fig6(const Fig6Options& opts);

inline constexpr const char* kFig6InstancesHeader =
    "tasks,instance,seed,method,ok,assigned,unassigned,total_distance_m,"
    "total_reward,alloc_time_s,note";
inline constexpr const char* kFig6SummaryHeader =
    "tasks,method,runs,failures,mean_alloc_time_s,mean_total_distance_m,"
    "mean_unassigned";
std::string fig6_instances_csv(const std::vector<Fig6Row>& rows);
std::string fig6_summary_csv(const std::vector<Fig6Row>& rows);

}  // namespace rangetap

#endif  // RANGETAP_BENCH_HPP_
