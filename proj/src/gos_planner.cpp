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

#include "rangetap/gos_planner.hpp"

#include <algorithm>
#include <cmath>

namespace rangetap {

PlannedPath PlannedPath::from_waypoints(std::vector<Point> waypoints) {
  PlannedPath path;
  path.length = path_length(waypoints);
  path.waypoints = std::move(waypoints);
  return path;
}

double path_length(std::span<const Point> waypoints) {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    total += distance(waypoints[i - 1], waypoints[i]);
  }
  return total;
}

std::vector<Point> subopt_vertices(const Point& p, const Polygon& obstacle) {
  if (strictly_inside(p, obstacle)) {
    throw PointInsideObstacle("subopt_vertices: " + to_string(p) +
                              " is inside obstacle " +
                              std::to_string(obstacle.id));
  }
  std::vector<Point> out;
  for (const Point& v : convex_vertices(obstacle)) {
    if (v == p) continue;
    if (!segment_intersects_polygon({p, v}, obstacle)) out.push_back(v);
  }
  return out;
}

ExtremePair extreme_vertices(const Segment& line,
                             std::span<const Point> candidates) {
  if (candidates.empty()) throw EmptyCandidates("extreme_vertices: no candidates");
  ExtremePair out{candidates.front(), candidates.front()};
  double best_left = signed_side_distance(out.left, line);
  double best_right = best_left;
  for (const Point& c : candidates.subspan(1)) {
    const double s = signed_side_distance(c, line);
    if (s > best_left || (s == best_left && lex_less(c, out.left))) {
      best_left = s;
      out.left = c;
    }
    if (s < best_right || (s == best_right && lex_less(c, out.right))) {
      best_right = s;
      out.right = c;
    }
  }
  return out;
}

std::vector<Point> opt_vertices(const Point& p, const Point& guide,
                                const Polygon& obstacle,
                                const ExtremePair& extremes) {
  std::vector<Point> out;
  auto consider = [&](const Point& v) {
    if (segment_intersects_polygon({p, v}, obstacle)) return;
    if (segment_intersects_polygon({v, guide}, obstacle)) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  consider(extremes.left);
  consider(extremes.right);
  return out;
}

namespace {

// argmin (or argmax) of the distance to line, ties to the lexicographically
// smallest point.
template <typename Better>
Point pick_by_distance(std::span<const Point> pts, const Segment& line,
                       Better better) {
  Point best = pts.front();
  double best_d = point_segment_distance(best, line);
  for (const Point& c : pts.subspan(1)) {
    const double d = point_segment_distance(c, line);
    if (better(d, best_d) || (d == best_d && lex_less(c, best))) {
      best = c;
      best_d = d;
    }
  }
  return best;
}

}  // namespace

Point candidate_guidance_point(const Point& p, const Segment& line,
                               const Polygon& obstacle) {
  const std::vector<Point> visible = subopt_vertices(p, obstacle);
  if (visible.empty()) {
    throw NoVisibleVertex("no convex vertex of obstacle " +
                          std::to_string(obstacle.id) + " is visible from " +
                          to_string(p));
  }
  const ExtremePair ext = extreme_vertices(line, visible);
  std::vector<Point> pool = opt_vertices(p, line.b, obstacle, ext);
  if (pool.empty()) pool = {ext.left, ext.right};
  return pick_by_distance(pool, line, std::less<double>());
}

std::optional<Point> optimal_global_guidance_point(
    const Point& p, const Segment& line, std::span<const Polygon* const> blocking) {
  std::vector<Point> candidates;
  candidates.reserve(blocking.size());
  for (const Polygon* obstacle : blocking) {
    try {
      candidates.push_back(candidate_guidance_point(p, line, *obstacle));
    } catch (const NoVisibleVertex&) {
      return std::nullopt;
    }
  }
  if (candidates.empty()) return std::nullopt;
  return pick_by_distance(candidates, line, std::greater<double>());
}

const char* to_string(PlanStatus status) {
  switch (status) {
    case PlanStatus::kOk:
      return "ok";
    case PlanStatus::kNoGuidancePoint:
      return "no guidance point";
    case PlanStatus::kIterationCapExceeded:
      return "iteration cap exceeded";
    case PlanStatus::kStartOrGoalInsideObstacle:
      return "start or goal inside obstacle";
  }
  return "unknown";
}

int iteration_cap(std::size_t vertex_count) {
  return 16 * (static_cast<int>(vertex_count) + 1);
}

namespace {

// Moves q out of the inflated margin it sits in. Points inside a raw
// obstacle, or that cannot be freed, yield nullopt.
std::optional<Point> escape_margin(const Point& q, const ObstacleSet& set,
                                   std::string& diagnostic, const char* label) {
  const Polygon* host = containing_obstacle(q, set.obstacles);
  if (host == nullptr) return q;
  if (containing_obstacle(q, set.raw) != nullptr) {
    diagnostic += std::string(label) + " " + to_string(q) +
                  " is inside a raw obstacle; ";
    return std::nullopt;
  }
  const Point edge = nearest_boundary_point(q, *host);
  const Point dir = edge - q;
  const double scale =
      std::max({1.0, std::abs(edge.x), std::abs(edge.y)});
  const Point moved = edge + dir * (1e-6 * scale / norm(dir));
  if (containing_obstacle(moved, set.obstacles) != nullptr) {
    diagnostic += std::string(label) + " " + to_string(q) +
                  " could not be moved out of the inflated margin; ";
    return std::nullopt;
  }
  diagnostic += std::string(label) + " moved from " + to_string(q) + " to " +
                to_string(moved) + " (inside inflated obstacle " +
                std::to_string(host->id) + "); ";
  return moved;
}

}  // namespace

PlanResult plan_global_path(const Point& start, const Point& goal,
                            const ObstacleSet& obstacles) {
  PlanResult result;
  const auto s = escape_margin(start, obstacles, result.diagnostic, "start");
  const auto e = escape_margin(goal, obstacles, result.diagnostic, "goal");
  if (!s || !e) {
    result.status = PlanStatus::kStartOrGoalInsideObstacle;
    return result;
  }
  const Point source = *s;
  const Point target = *e;

  std::vector<Point> path{source};
  if (source == target) {
    result.path = PlannedPath::from_waypoints(std::move(path));
    return result;
  }

  const int cap = iteration_cap(obstacles.vertex_count());
  Point p = source;
  Point guide = target;
  while (result.iterations < cap) {
    ++result.iterations;
    const Segment line{p, guide};
    const std::vector<const Polygon*> blocking = check_intersect(line, obstacles);
    Point next = guide;
    if (!blocking.empty()) {
      const auto best = optimal_global_guidance_point(p, line, blocking);
      if (!best) {
        result.status = PlanStatus::kNoGuidancePoint;
        return result;
      }
      next = *best;
    }
    if (segment_is_free({p, next}, obstacles)) {
      path.push_back(next);
      if (next == target) {
        result.path = PlannedPath::from_waypoints(std::move(path));
        return result;
      }
      p = next;
      guide = target;
    } else {
      guide = next;
    }
  }
  result.status = PlanStatus::kIterationCapExceeded;
  return result;
}

PlanResult plan_global_path(const Point& start, const Point& goal,
                            double radius, const std::vector<Polygon>& raw) {
  return plan_global_path(start, goal, ObstacleSet::build(raw, radius));
}

}  // namespace rangetap
