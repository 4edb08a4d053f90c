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

#include "rangetap/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>

namespace rangetap {

OccupancyGrid::OccupancyGrid(Point origin, double resolution, int width,
                             int height)
    : origin_(origin),
      resolution_(resolution),
      width_(width),
      height_(height),
      blocked_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
               0) {}

std::size_t OccupancyGrid::blocked_count() const {
  return static_cast<std::size_t>(
      std::count(blocked_.begin(), blocked_.end(), std::uint8_t{1}));
}

Point OccupancyGrid::center(const Cell& c) const {
  return {origin_.x + (c.col + 0.5) * resolution_,
          origin_.y + (c.row + 0.5) * resolution_};
}

Cell OccupancyGrid::cell_of(const Point& p) const {
  return {static_cast<int>(std::floor((p.x - origin_.x) / resolution_)),
          static_cast<int>(std::floor((p.y - origin_.y) / resolution_))};
}

OccupancyGrid rasterize(const ObstacleSet& obstacles, const Rect& window,
                        double resolution) {
  if (!(resolution > 0.0)) throw OracleError("resolution must be > 0");
  const double w = std::ceil(window.width() / resolution);
  const double h = std::ceil(window.height() / resolution);
  if (w * h > static_cast<double>(kMaxGridCells)) {
    throw GridTooLarge("grid of " + std::to_string(w * h) + " cells exceeds " +
                       std::to_string(kMaxGridCells));
  }
  OccupancyGrid grid({window.min_x, window.min_y}, resolution,
                     static_cast<int>(w), static_cast<int>(h));

  // Scanline fill through cell-center rows. Span ends get an exact check so
  // centers on the boundary stay free.
  for (const Polygon& poly : obstacles.obstacles) {
    const BoundingBox box = bounding_box(poly.vertices);
    const int row0 = std::max(0, grid.cell_of({box.min_x, box.min_y}).row);
    const int row1 =
        std::min(grid.height() - 1, grid.cell_of({box.max_x, box.max_y}).row);
    const auto& v = poly.vertices;
    std::vector<double> xs;
    for (int row = row0; row <= row1; ++row) {
      const double y = grid.center({0, row}).y;
      xs.clear();
      for (std::size_t i = 0, n = v.size(), j = n - 1; i < n; j = i++) {
        if ((v[i].y > y) != (v[j].y > y)) {
          xs.push_back(v[j].x +
                       (y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y));
        }
      }
      std::sort(xs.begin(), xs.end());
      for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
        const double first = (xs[k] - window.min_x) / resolution - 0.5;
        const double last = (xs[k + 1] - window.min_x) / resolution - 0.5;
        const int c0 = std::max(0, static_cast<int>(std::floor(first)));
        const int c1 =
            std::min(grid.width() - 1, static_cast<int>(std::ceil(last)));
        for (int col = c0; col <= c1; ++col) {
          const bool edge_cell = col <= c0 + 1 || col >= c1 - 1;
          const Cell cell{col, row};
          if (edge_cell) {
            if (strictly_inside(grid.center(cell), poly)) {
              grid.set_blocked(cell, true);
            }
          } else {
            grid.set_blocked(cell, true);
          }
        }
      }
    }
  }
  return grid;
}

std::optional<SnapResult> snap_to_free(const OccupancyGrid& grid,
                                       const Point& p) {
  Cell c = grid.cell_of(p);
  c.col = std::clamp(c.col, 0, grid.width() - 1);
  c.row = std::clamp(c.row, 0, grid.height() - 1);
  const int max_ring = std::max(grid.width(), grid.height());
  std::optional<SnapResult> best;
  for (int ring = 0; ring <= max_ring; ++ring) {
    if (best && (ring - 1) * grid.resolution() > best->distance) break;
    for (int dr = -ring; dr <= ring; ++dr) {
      for (int dc = -ring; dc <= ring; ++dc) {
        if (std::max(std::abs(dr), std::abs(dc)) != ring) continue;
        const Cell n{c.col + dc, c.row + dr};
        if (!grid.in_bounds(n) || grid.blocked(n)) continue;
        const Point q = grid.center(n);
        const double d = distance(p, q);
        if (!best || d < best->distance) best = SnapResult{q, d};
      }
    }
  }
  return best;
}

namespace {

constexpr int kDirCol[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDirRow[8] = {0, 0, 1, -1, 1, -1, 1, -1};
constexpr std::uint8_t kNoParent = 255;

}  // namespace

std::optional<PlannedPath> grid_astar(const OccupancyGrid& grid,
                                      const Point& start, const Point& goal) {
  const Cell s = grid.cell_of(start);
  const Cell g = grid.cell_of(goal);
  if (!grid.in_bounds(s) || grid.blocked(s)) {
    throw BlockedEndpoint("start " + to_string(start) + " is blocked or off-grid");
  }
  if (!grid.in_bounds(g) || grid.blocked(g)) {
    throw BlockedEndpoint("goal " + to_string(goal) + " is blocked or off-grid");
  }
  if (s == g) return PlannedPath::from_waypoints({grid.center(s)});

  const std::size_t cells = static_cast<std::size_t>(grid.width()) *
                            static_cast<std::size_t>(grid.height());
  constexpr float kInf = std::numeric_limits<float>::infinity();
  constexpr double kDiag = 1.4142135623730951;
  std::vector<float> cost(cells, kInf);
  std::vector<std::uint8_t> parent(cells, kNoParent);
  std::vector<std::uint8_t> closed(cells, 0);

  auto heuristic = [&](const Cell& c) {
    const double dx = std::abs(c.col - g.col);
    const double dy = std::abs(c.row - g.row);
    return (dx + dy) + (kDiag - 2.0) * std::min(dx, dy);
  };
  struct Entry {
    double f;
    double g;
    std::uint32_t index;
  };
  auto worse = [](const Entry& a, const Entry& b) {
    if (a.f != b.f) return a.f > b.f;
    return a.g < b.g;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> open(worse);

  const std::size_t si = grid.index(s);
  const std::size_t gi = grid.index(g);
  cost[si] = 0.0f;
  open.push({heuristic(s), 0.0, static_cast<std::uint32_t>(si)});
  const int w = grid.width();
  bool found = false;
  while (!open.empty()) {
    const Entry top = open.top();
    open.pop();
    if (closed[top.index]) continue;
    closed[top.index] = 1;
    if (top.index == gi) {
      found = true;
      break;
    }
    const Cell c{static_cast<int>(top.index % static_cast<std::uint32_t>(w)),
                 static_cast<int>(top.index / static_cast<std::uint32_t>(w))};
    for (std::uint8_t d = 0; d < 8; ++d) {
      const Cell n{c.col + kDirCol[d], c.row + kDirRow[d]};
      if (!grid.in_bounds(n) || grid.blocked(n)) continue;
      const bool diagonal = d >= 4;
      if (diagonal && (grid.blocked({c.col + kDirCol[d], c.row}) ||
                       grid.blocked({c.col, c.row + kDirRow[d]}))) {
        continue;
      }
      const std::size_t ni = grid.index(n);
      if (closed[ni]) continue;
      const double ng = top.g + (diagonal ? kDiag : 1.0);
      if (ng < cost[ni]) {
        cost[ni] = static_cast<float>(ng);
        parent[ni] = d;
        open.push({ng + heuristic(n), ng, static_cast<std::uint32_t>(ni)});
      }
    }
  }
  if (!found) return std::nullopt;

  // Walk back, keeping only the cells where the move direction changes.
  std::vector<Point> reversed;
  Cell c = g;
  std::uint8_t prev_dir = kNoParent;
  reversed.push_back(grid.center(c));
  while (!(c == s)) {
    const std::uint8_t d = parent[grid.index(c)];
    if (prev_dir != kNoParent && d != prev_dir) reversed.push_back(grid.center(c));
    prev_dir = d;
    c = {c.col - kDirCol[d], c.row - kDirRow[d]};
  }
  reversed.push_back(grid.center(s));
  std::reverse(reversed.begin(), reversed.end());
  return PlannedPath::from_waypoints(std::move(reversed));
}

PlannedPath visibility_dijkstra(const Point& start, const Point& goal,
                                const ObstacleSet& obstacles) {
  for (const Point& q : {start, goal}) {
    if (containing_obstacle(q, obstacles.obstacles) != nullptr) {
      throw Unreachable("endpoint " + to_string(q) + " is inside an obstacle");
    }
  }
  if (start == goal) return PlannedPath::from_waypoints({start});

  std::vector<Point> nodes{start, goal};
  for (const Polygon& poly : obstacles.obstacles) {
    for (const Point& v : convex_vertices(poly)) nodes.push_back(v);
  }
  const std::size_t n = nodes.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> prev(n, n);
  std::vector<bool> done(n, false);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[0] = 0.0;
  open.push({0.0, 0});
  while (!open.empty()) {
    const auto [du, u] = open.top();
    open.pop();
    if (done[u]) continue;
    done[u] = true;
    if (u == 1) break;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || nodes[v] == nodes[u]) continue;
      const double nd = du + distance(nodes[u], nodes[v]);
      if (nd >= dist[v]) continue;
      if (!segment_is_free({nodes[u], nodes[v]}, obstacles)) continue;
      dist[v] = nd;
      prev[v] = u;
      open.push({nd, v});
    }
  }
  if (!done[1]) {
    throw Unreachable("no obstacle-free route from " + to_string(start) +
                      " to " + to_string(goal));
  }
  std::vector<Point> pts;
  for (std::size_t v = 1; v != n; v = prev[v]) pts.push_back(nodes[v]);
  std::reverse(pts.begin(), pts.end());
  return PlannedPath::from_waypoints(std::move(pts));
}

namespace {

struct RouteChoice {
  bool feasible = false;
  double reward = 0.0;
  std::vector<std::size_t> order;  // task indices
};

}  // namespace

Allocation brute_force_allocation(const std::vector<RobotSpec>& robots_in,
                                  const std::vector<TaskSpec>& tasks_in,
                                  const LegPlanner& planner,
                                  const AllocConfig& cfg) {
  if (robots_in.size() > 3 || tasks_in.size() > 5) {
    throw InstanceTooLarge("brute force supports at most 3 robots and 5 tasks");
  }
  validate(cfg);
  std::vector<RobotSpec> robots = robots_in;
  std::vector<TaskSpec> tasks = tasks_in;
  for (const RobotSpec& r : robots) validate(r);
  std::sort(robots.begin(), robots.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(tasks.begin(), tasks.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  const std::size_t m = robots.size();
  const std::size_t n = tasks.size();
  const std::uint64_t calls_before = planner.calls();

  // Leg cache keyed by (robot, origin task or n for the start, target task).
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>,
           std::optional<PlannedPath>>
      legs;
  auto leg = [&](std::size_t i, std::size_t from,
                 std::size_t to) -> const std::optional<PlannedPath>& {
    const auto key = std::make_tuple(i, from, to);
    auto it = legs.find(key);
    if (it == legs.end()) {
      const Point origin = from == n ? robots[i].start : tasks[from].position;
      PlanResult r = planner.plan(origin, tasks[to].position, robots[i]);
      it = legs.emplace(key, std::move(r.path)).first;
    }
    return it->second;
  };
  std::map<std::pair<std::size_t, std::size_t>, std::optional<double>> returns;
  auto return_length = [&](std::size_t i,
                           std::size_t j) -> const std::optional<double>& {
    auto it = returns.find({i, j});
    if (it == returns.end()) {
      const PlanResult r = planner.plan(tasks[j].position, robots[i].start, robots[i]);
      std::optional<double> len;
      if (r.ok()) len = r.path->length;
      it = returns.emplace(std::make_pair(i, j), len).first;
    }
    return it->second;
  };

  // Best visiting order per (robot, task subset).
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::vector<RouteChoice>> best(m, std::vector<RouteChoice>(subsets));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      std::vector<std::size_t> order;
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (std::size_t{1} << j)) order.push_back(j);
      }
      RouteChoice& choice = best[i][mask];
      if (static_cast<int>(order.size()) > robots[i].capacity) continue;
      do {
        double committed = 0.0;
        double reward = 0.0;
        bool ok = true;
        std::size_t from = n;
        for (std::size_t j : order) {
          const auto& path = leg(i, from, j);
          if (!path) {
            ok = false;
            break;
          }
          double ret = 0.0;
          if (cfg.range_check_mode == RangeCheckMode::kWithReturn) {
            const auto& r = return_length(i, j);
            if (!r) {
              ok = false;
              break;
            }
            ret = *r;
          }
          if (!range_feasible(cfg.range_check_mode, committed, path->length,
                              ret, robots[i].range_budget)) {
            ok = false;
            break;
          }
          committed = committed + path->length;
          reward += std::pow(cfg.lambda, committed);
          from = j;
        }
        if (ok && (!choice.feasible || reward > choice.reward)) {
          choice = {true, reward, order};
        }
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }

  // Enumerate owner vectors: owner[j] in [0, m], m meaning unassigned.
  std::vector<std::size_t> owner(n, 0);
  std::vector<std::size_t> best_owner(n, m);
  double best_total = -1.0;
  while (true) {
    std::vector<std::size_t> masks(m, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (owner[j] < m) masks[owner[j]] |= std::size_t{1} << j;
    }
    double total = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      ok = best[i][masks[i]].feasible;
      total += best[i][masks[i]].reward;
    }
    if (ok && total > best_total) {
      best_total = total;
      best_owner = owner;
    }
    std::size_t k = 0;
    while (k < n && owner[k] == m) owner[k++] = 0;
    if (k == n) break;
    ++owner[k];
  }

  Allocation out;
  std::vector<std::size_t> masks(m, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (best_owner[j] < m) {
      masks[best_owner[j]] |= std::size_t{1} << j;
    } else {
      out.unassigned.push_back(tasks[j].id);
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    RobotLedger ledger;
    ledger.dirty = false;
    ledger.committed_path = PlannedPath::from_waypoints({robots[i].start});
    std::size_t from = n;
    for (std::size_t j : best[i][masks[i]].order) {
      const PlannedPath& path = *leg(i, from, j);
      auto& pts = ledger.committed_path.waypoints;
      if (ledger.tasks.empty()) {
        pts = path.waypoints;
      } else {
        pts.insert(pts.end(), path.waypoints.begin() + 1, path.waypoints.end());
      }
      ledger.distance = ledger.distance + path.length;
      ledger.arrival.push_back(ledger.distance);
      ledger.reward += std::pow(cfg.lambda, ledger.distance);
      ledger.tasks.push_back(tasks[j].id);
      from = j;
    }
    ledger.committed_path.length = ledger.distance;
    out.ledgers.emplace(robots[i].id, std::move(ledger));
  }
  out.stats.planner_calls = planner.calls() - calls_before;
  return out;
}

Allocation brute_force_allocation(const std::vector<RobotSpec>& robots,
                                  const std::vector<TaskSpec>& tasks,
                                  const std::vector<Polygon>& raw_obstacles,
                                  const AllocConfig& cfg) {
  if (robots.size() > 3 || tasks.size() > 5) {
    throw InstanceTooLarge("brute force supports at most 3 robots and 5 tasks");
  }
  const GosLegPlanner planner(raw_obstacles, robots);
  check_tasks_free(tasks, planner, robots);
  return brute_force_allocation(robots, tasks, planner, cfg);
}

void replan_ledgers(Allocation& allocation,
                    const std::vector<RobotSpec>& robots,
                    const std::vector<TaskSpec>& tasks,
                    const LegPlanner& planner, double lambda) {
  std::map<int, Point> where;
  for (const TaskSpec& t : tasks) where[t.id] = t.position;
  const std::uint64_t calls_before = planner.calls();
  for (const RobotSpec& robot : robots) {
    auto it = allocation.ledgers.find(robot.id);
    if (it == allocation.ledgers.end()) continue;
    RobotLedger& ledger = it->second;
    if (ledger.tasks.empty()) continue;
    std::vector<Point> pts;
    std::vector<double> arrival;
    double dist = 0.0;
    double reward = 0.0;
    Point from = robot.start;
    for (int task_id : ledger.tasks) {
      const Point to = where.at(task_id);
      PlanResult leg = planner.plan(from, to, robot);
      PlannedPath path;
      if (leg.ok()) {
        path = std::move(*leg.path);
      } else {
        allocation.diagnostics.push_back(
            "replan robot " + std::to_string(robot.id) + " -> task " +
            std::to_string(task_id) + " failed (" + to_string(leg.status) +
            "); kept straight segment");
        path = PlannedPath::from_waypoints({from, to});
      }
      if (pts.empty()) {
        pts = path.waypoints;
      } else {
        pts.insert(pts.end(), path.waypoints.begin() + 1, path.waypoints.end());
      }
      dist = dist + path.length;
      arrival.push_back(dist);
      reward += std::pow(lambda, dist);
      from = pts.back();
    }
    ledger.committed_path.waypoints = std::move(pts);
    ledger.committed_path.length = dist;
    ledger.arrival = std::move(arrival);
    ledger.distance = dist;
    ledger.reward = reward;
  }
  allocation.stats.planner_calls += planner.calls() - calls_before;
}

Allocation straightline_baseline_allocate(
    const std::vector<RobotSpec>& robots, const std::vector<TaskSpec>& tasks,
    const std::vector<Polygon>& raw_obstacles, const AllocConfig& cfg) {
  const GosLegPlanner gos(raw_obstacles, robots);
  check_tasks_free(tasks, gos, robots);
  const StraightLegPlanner straight;
  Auctioneer auction(robots, tasks, straight, cfg);
  auction.run();
  Allocation out = auction.result();
  replan_ledgers(out, robots, tasks, gos, cfg.lambda);
  return out;
}

}  // namespace rangetap
