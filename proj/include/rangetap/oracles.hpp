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

// Reference implementations the planner and allocator are measured against:
// grid A*, exact visibility-graph shortest paths, exhaustive allocation, and
// a greedy allocator that bids with straight-line distances.

#ifndef RANGETAP_ORACLES_HPP_
#define RANGETAP_ORACLES_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "rangetap/auction.hpp"
#include "rangetap/geometry.hpp"
#include "rangetap/gos_planner.hpp"

namespace rangetap {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class GridTooLarge : public OracleError {
 public:
  using OracleError::OracleError;
};
class BlockedEndpoint : public OracleError {
 public:
  using OracleError::OracleError;
};
class Unreachable : public OracleError {
 public:
  using OracleError::OracleError;
};
class InstanceTooLarge : public OracleError {
 public:
  using OracleError::OracleError;
};

struct Rect {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  bool contains(const Point& p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
};

struct Cell {
  int col = 0;
  int row = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

class OccupancyGrid {
 public:
  OccupancyGrid(Point origin, double resolution, int width, int height);

  double resolution() const { return resolution_; }
  int width() const { return width_; }
  int height() const { return height_; }
  const Point& origin() const { return origin_; }

  bool in_bounds(const Cell& c) const {
    return c.col >= 0 && c.row >= 0 && c.col < width_ && c.row < height_;
  }
  bool blocked(const Cell& c) const { return blocked_[index(c)] != 0; }
  void set_blocked(const Cell& c, bool value) { blocked_[index(c)] = value; }
  std::size_t blocked_count() const;

  Point center(const Cell& c) const;
  Cell cell_of(const Point& p) const;
  std::size_t index(const Cell& c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }

 private:
  Point origin_;
  double resolution_;
  int width_;
  int height_;
  std::vector<std::uint8_t> blocked_;
};

inline constexpr std::size_t kMaxGridCells = 100'000'000;

// A cell is blocked iff its center is strictly inside a planning obstacle.
OccupancyGrid rasterize(const ObstacleSet& obstacles, const Rect& window,
                        double resolution);

struct SnapResult {
  Point point;      // free cell center
  double distance;  // how far the query point moved
};
// Nearest free cell center to p (by ring search over cells).
std::optional<SnapResult> snap_to_free(const OccupancyGrid& grid,
                                       const Point& p);

// 8-connected A*, octile heuristic, no corner cutting. Waypoints are cell
// centers. Throws BlockedEndpoint if either endpoint's cell is blocked or off
// the grid; returns nullopt when unreachable.
std::optional<PlannedPath> grid_astar(const OccupancyGrid& grid,
                                      const Point& start, const Point& goal);

// Exact shortest obstacle-avoiding polyline. Throws Unreachable.
PlannedPath visibility_dijkstra(const Point& start, const Point& goal,
                                const ObstacleSet& obstacles);

// Exhaustive search over assignments and visiting orders. Leg lengths come
// from planner; each append must pass the same range check allocate uses.
// Throws InstanceTooLarge beyond 3 robots or 5 tasks.
Allocation brute_force_allocation(const std::vector<RobotSpec>& robots,
                                  const std::vector<TaskSpec>& tasks,
                                  const LegPlanner& planner,
                                  const AllocConfig& cfg);
Allocation brute_force_allocation(const std::vector<RobotSpec>& robots,
                                  const std::vector<TaskSpec>& tasks,
                                  const std::vector<Polygon>& raw_obstacles,
                                  const AllocConfig& cfg);

// Same auction loop, but bids with straight-line legs. Committed routes are
// then re-planned with Global-GOS so the reported distances are real.
Allocation straightline_baseline_allocate(
    const std::vector<RobotSpec>& robots, const std::vector<TaskSpec>& tasks,
    const std::vector<Polygon>& raw_obstacles, const AllocConfig& cfg);

// Re-plans each ledger's visiting order with planner, recomputing path,
// distances and reward.
void replan_ledgers(Allocation& allocation,
                    const std::vector<RobotSpec>& robots,
                    const std::vector<TaskSpec>& tasks,
                    const LegPlanner& planner, double lambda);

}  // namespace rangetap

#endif  // RANGETAP_ORACLES_HPP_
