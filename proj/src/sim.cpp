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

#include "rangetap/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace rangetap {

const char* to_string(AllocatorKind kind) {
  return kind == AllocatorKind::kRangeTap ? "rangetap" : "straightline";
}

std::pair<Allocation, double> run_allocation(const Scenario& s,
                                             AllocatorKind kind) {
  const auto t0 = std::chrono::steady_clock::now();
  Allocation allocation =
      kind == AllocatorKind::kRangeTap
          ? allocate(s.robots, s.tasks, s.obstacles_raw, s.alloc_config)
          : straightline_baseline_allocate(s.robots, s.tasks, s.obstacles_raw,
                                           s.alloc_config);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  return {std::move(allocation), dt.count()};
}

MissionReport run_mission(const Scenario& s, AllocatorKind kind) {
  MissionReport report;
  report.scenario = s.name;
  report.allocator = to_string(kind);

  std::vector<RobotSpec> robots = s.robots;
  std::sort(robots.begin(), robots.end(),
            [](const RobotSpec& a, const RobotSpec& b) { return a.id < b.id; });

  Allocation allocation;
  try {
    auto [alloc, seconds] = run_allocation(s, kind);
    allocation = std::move(alloc);
    report.allocation_time_s = seconds;
  } catch (const AllocationError& e) {
    for (const RobotSpec& r : robots) {
      RobotReport rr;
      rr.robot_id = r.id;
      rr.range_budget = r.range_budget;
      rr.remaining_range = r.range_budget;
      rr.completed_return = s.return_to_start;
      rr.route = {r.start};
      report.robots.push_back(std::move(rr));
    }
    for (const TaskSpec& t : s.tasks) report.unassigned_tasks.push_back(t.id);
    std::sort(report.unassigned_tasks.begin(), report.unassigned_tasks.end());
    report.diagnostics.push_back(e.what());
    throw MissionFailed(e.what(), std::move(report));
  }

  const GosLegPlanner planner(s.obstacles_raw, robots);
  for (const RobotSpec& robot : robots) {
    const RobotLedger& ledger = allocation.ledgers.at(robot.id);
    RobotReport rr;
    rr.robot_id = robot.id;
    rr.range_budget = robot.range_budget;
    rr.tasks_assigned = ledger.tasks;
    rr.traveled = ledger.distance;
    rr.route = ledger.tasks.empty() ? std::vector<Point>{robot.start}
                                    : ledger.committed_path.waypoints;
    bool returned = true;
    if (s.return_to_start && !ledger.tasks.empty()) {
      const PlanResult back = planner.plan(rr.route.back(), robot.start, robot);
      if (back.ok()) {
        rr.route.insert(rr.route.end(), back.path->waypoints.begin() + 1,
                        back.path->waypoints.end());
        rr.traveled = rr.traveled + back.path->length;
      } else {
        returned = false;
        report.diagnostics.push_back("robot " + std::to_string(robot.id) +
                                     ": return leg planning failed (" +
                                     to_string(back.status) + ")");
      }
    }
    rr.remaining_range = robot.range_budget - rr.traveled;
    // A task counts once the robot arrives there with range left.
    for (std::size_t k = 0; k < ledger.tasks.size(); ++k) {
      if (ledger.arrival[k] <= robot.range_budget) {
        rr.tasks_completed.push_back(ledger.tasks[k]);
      }
    }
    rr.completed_return =
        s.return_to_start && returned && rr.remaining_range >= 0.0;
    report.total_distance += rr.traveled;
    report.makespan_distance = std::max(report.makespan_distance, rr.traveled);
    report.robots.push_back(std::move(rr));
  }
  report.total_reward = total_reward(allocation);
  report.unassigned_tasks = allocation.unassigned;
  report.rounds = allocation.rounds;
  report.planner_calls = allocation.stats.planner_calls + planner.calls();
  report.compute_bid_calls = allocation.stats.compute_bid_calls;
  report.diagnostics.insert(report.diagnostics.begin(),
                            allocation.diagnostics.begin(),
                            allocation.diagnostics.end());
  return report;
}

std::map<int, std::vector<std::pair<std::size_t, double>>>
remaining_range_series(const MissionReport& report) {
  std::map<int, std::vector<std::pair<std::size_t, double>>> out;
  for (const RobotReport& r : report.robots) {
    auto& series = out[r.robot_id];
    double used = 0.0;
    series.emplace_back(0, r.range_budget);
    for (std::size_t k = 1; k < r.route.size(); ++k) {
      used += distance(r.route[k - 1], r.route[k]);
      series.emplace_back(k, r.range_budget - used);
    }
  }
  return out;
}

const char* to_string(MapKind kind) {
  switch (kind) {
    case MapKind::kSmall:
      return "small";
    case MapKind::kMedium:
      return "medium";
    case MapKind::kLarge:
      return "large";
    case MapKind::kRandom:
      return "random";
  }
  return "unknown";
}

std::optional<MapKind> parse_map_kind(std::string_view text) {
  if (text == "small") return MapKind::kSmall;
  if (text == "medium") return MapKind::kMedium;
  if (text == "large") return MapKind::kLarge;
  if (text == "random") return MapKind::kRandom;
  return std::nullopt;
}

namespace {

struct MapParams {
  double width;
  double height;
  int count_lo;
  int count_hi;
  double size_lo;
  double size_hi;
  double radius;
};

MapParams params_for(MapKind kind, std::mt19937_64& rng) {
  switch (kind) {
    case MapKind::kSmall:
      return {32.0, 32.0, 10, 14, 2.0, 5.0, 0.3};
    case MapKind::kMedium:
      return {256.0, 256.0, 22, 30, 12.0, 36.0, 1.0};
    case MapKind::kLarge:
      return {6000.0, 4000.0, 45, 60, 150.0, 450.0, 5.0};
    case MapKind::kRandom:
      break;
  }
  std::uniform_real_distribution<double> side(32.0, 512.0);
  const double w = side(rng);
  const double h = side(rng);
  const double m = std::min(w, h);
  const int count = std::max(4, static_cast<int>(w * h / (m * m * 0.02) / 6.0));
  return {w, h, count, count + 4, 0.04 * m, 0.12 * m, 0.01 * m};
}

Point rotate(const Point& p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

std::vector<Point> random_shape(double size_lo, double size_hi,
                                std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> size(size_lo, size_hi);
  const double angle = unit(rng) * std::numbers::pi;
  std::vector<Point> local;
  const double kind = unit(rng);
  if (kind < 0.45) {
    const double a = size(rng) / 2.0;
    const double b = size(rng) / 2.0;
    local = {{-a, -b}, {a, -b}, {a, b}, {-a, b}};
  } else if (kind < 0.85) {
    const double r = size(rng) / 2.0;
    std::vector<Point> pts;
    for (int k = 0; k < 7; ++k) {
      const double t = 2.0 * std::numbers::pi * (k + unit(rng) * 0.6) / 7.0;
      const double rr = r * (0.6 + 0.4 * unit(rng));
      pts.push_back({rr * std::cos(t), rr * std::sin(t)});
    }
    local = convex_hull(pts);
  } else {
    // L-shape: concave hexagon.
    const double a = size(rng);
    const double b = size(rng);
    const double t = std::min(a, b) * (0.3 + 0.2 * unit(rng));
    local = {{0, 0}, {a, 0}, {a, t}, {t, t}, {t, b}, {0, b}};
    for (Point& p : local) p = p - Point{a / 2.0, b / 2.0};
  }
  for (Point& p : local) p = rotate(p, angle);
  return local;
}

bool boxes_overlap(const BoundingBox& a, const Rect& r) {
  return a.min_x <= r.max_x && r.min_x <= a.max_x && a.min_y <= r.max_y &&
         r.min_y <= a.max_y;
}

}  // namespace

GeneratedMap generate_map(MapKind kind, std::uint64_t seed, double density) {
  std::mt19937_64 rng(seed);
  const MapParams mp = params_for(kind, rng);
  GeneratedMap map;
  map.robot_radius = mp.radius;
  Scenario& s = map.scenario;
  s.name = std::string(to_string(kind)) + "-" + std::to_string(seed);
  s.seed = seed;
  s.bounds = {0.0, 0.0, mp.width, mp.height};
  const double strip = 0.08 * mp.width;
  map.start_region = {0.0, 0.0, strip, mp.height};
  map.goal_region = {mp.width - strip, 0.0, mp.width, mp.height};

  std::uniform_int_distribution<int> count_dist(mp.count_lo, mp.count_hi);
  const int target = std::max(
      1, static_cast<int>(std::lround(count_dist(rng) * density)));
  const double gap = std::max(4.0 * mp.radius, 0.1 * mp.size_lo);
  std::uniform_real_distribution<double> ux(strip, mp.width - strip);
  std::uniform_real_distribution<double> uy(0.0, mp.height);
  std::vector<BoundingBox> placed;
  for (int attempt = 0;
       attempt < target * 200 && static_cast<int>(placed.size()) < target;
       ++attempt) {
    std::vector<Point> shape = random_shape(mp.size_lo, mp.size_hi, rng);
    const Point c{ux(rng), uy(rng)};
    for (Point& p : shape) p = p + c;
    const BoundingBox box = bounding_box(shape);
    if (box.min_x < strip + gap || box.max_x > mp.width - strip - gap ||
        box.min_y < gap || box.max_y > mp.height - gap) {
      continue;
    }
    const Rect grown{box.min_x - gap, box.min_y - gap, box.max_x + gap,
                     box.max_y + gap};
    if (std::any_of(placed.begin(), placed.end(), [&](const BoundingBox& b) {
          return boxes_overlap(b, grown);
        })) {
      continue;
    }
    Polygon poly = normalized(
        Polygon{static_cast<int>(placed.size()), std::move(shape)});
    if (!is_valid_polygon(poly)) continue;
    placed.push_back(box);
    s.obstacles_raw.push_back(std::move(poly));
  }
  return map;
}

Point sample_free_point(const ObstacleSet& obstacles, const Rect& region,
                        double margin, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(region.min_x, region.max_x);
  std::uniform_real_distribution<double> uy(region.min_y, region.max_y);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Point p{ux(rng), uy(rng)};
    bool clear = true;
    for (const Polygon& poly : obstacles.obstacles) {
      if (inside_or_on(p, poly) || boundary_distance(p, poly) < margin) {
        clear = false;
        break;
      }
    }
    if (clear) return p;
  }
  throw OracleError("could not sample a free point in the region");
}

Scenario populate(const GeneratedMap& map, const FleetParams& params,
                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Scenario s = map.scenario;
  s.seed = seed;
  const double radius = params.radius > 0.0 ? params.radius : map.robot_radius;
  const ObstacleSet set = ObstacleSet::build(s.obstacles_raw, radius);
  const std::vector<double> budgets =
      params.budgets.empty() ? std::vector<double>{1e9} : params.budgets;
  for (int i = 0; i < params.robots; ++i) {
    RobotSpec r;
    r.id = i;
    r.start = sample_free_point(set, map.start_region, radius, rng);
    r.radius = radius;
    r.capacity = params.capacity;
    r.range_budget = budgets[static_cast<std::size_t>(i) % budgets.size()];
    s.robots.push_back(r);
  }
  for (int j = 0; j < params.tasks; ++j) {
    s.tasks.push_back({j, sample_free_point(set, s.bounds, radius, rng)});
  }
  return s;
}

}  // namespace rangetap
