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

// Mission replay and map generation.
//
// Robots follow their committed polylines (plus an optional return leg);
// distance is the unit of account. There is no kinematics, timing or
// inter-robot interaction.

#ifndef RANGETAP_SIM_HPP_
#define RANGETAP_SIM_HPP_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rangetap/auction.hpp"
#include "rangetap/oracles.hpp"

namespace rangetap {

struct Scenario {
  std::string name;
  Rect bounds;
  std::vector<Polygon> obstacles_raw;
  std::vector<RobotSpec> robots;
  std::vector<TaskSpec> tasks;
  AllocConfig alloc_config;
  bool return_to_start = false;
  std::uint64_t seed = 0;
  // Budget reduction applied when replaying the straight-line baseline in
  // the tight-budget comparison. Zero when the fixture does not define one.
  double baseline_budget_margin = 0.0;
};

enum class AllocatorKind { kRangeTap, kStraightline };
const char* to_string(AllocatorKind kind);

struct RobotReport {
  int robot_id = 0;
  double range_budget = 0.0;
  double traveled = 0.0;
  double remaining_range = 0.0;
  std::vector<int> tasks_assigned;
  std::vector<int> tasks_completed;
  bool completed_return = false;
  std::vector<Point> route;  // committed path plus return leg
};

struct MissionReport {
  std::string scenario;
  std::string allocator;
  std::vector<RobotReport> robots;  // ascending robot id
  double total_distance = 0.0;
  double makespan_distance = 0.0;
  double total_reward = 0.0;
  std::vector<int> unassigned_tasks;
  int rounds = 0;
  double allocation_time_s = 0.0;
  std::uint64_t planner_calls = 0;
  std::uint64_t compute_bid_calls = 0;
  std::vector<std::string> diagnostics;
};

// Raised when allocation cannot start (e.g. a task inside an obstacle).
// Carries a report with every robot idle at its start.
class MissionFailed : public AllocationError {
 public:
  MissionFailed(const std::string& what, MissionReport partial)
      : AllocationError(what), partial_(std::move(partial)) {}
  const MissionReport& partial() const { return partial_; }

 private:
  MissionReport partial_;
};

// Allocation-only entry point used by run_mission and the CLI; returns the
// allocation and the wall time spent computing it.
std::pair<Allocation, double> run_allocation(const Scenario& s,
                                             AllocatorKind kind);

MissionReport run_mission(const Scenario& s,
                          AllocatorKind kind = AllocatorKind::kRangeTap);

// Per robot: (route waypoint index, remaining range) starting at the budget.
std::map<int, std::vector<std::pair<std::size_t, double>>>
remaining_range_series(const MissionReport& report);

enum class MapKind { kSmall, kMedium, kLarge, kRandom };
const char* to_string(MapKind kind);
std::optional<MapKind> parse_map_kind(std::string_view text);

struct GeneratedMap {
  Scenario scenario;   // bounds + obstacles only
  Rect start_region;   // kept obstacle-free; robots start here
  Rect goal_region;    // kept obstacle-free on the far side
  double robot_radius = 0.0;
};

// density scales the obstacle count.
GeneratedMap generate_map(MapKind kind, std::uint64_t seed,
                          double density = 1.0);

// Uniform sample in region that is clear of every merged obstacle by at
// least margin. Throws OracleError after too many rejections.
Point sample_free_point(const ObstacleSet& obstacles, const Rect& region,
                        double margin, std::mt19937_64& rng);

// Robots in the start region and tasks anywhere in the workspace, all in
// free space for the robots' radius.
struct FleetParams {
  int robots = 5;
  int tasks = 10;
  int capacity = 10;
  std::vector<double> budgets;  // cycled over robots
  double radius = 0.0;          // 0: use the map's robot radius
};
Scenario populate(const GeneratedMap& map, const FleetParams& params,
                  std::uint64_t seed);

}  // namespace rangetap

#endif  // RANGETAP_SIM_HPP_
