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

// Global guidance-point planner.
//
// Works directly on polygonal obstacles in continuous space. Each iteration
// looks at the obstacles blocking the segment from the current path node p to
// the current guidance point guide, picks one candidate vertex per blocking
// obstacle, and redirects toward the candidate furthest from that segment.
// A candidate that p can see is committed to the path and the goal becomes
// the guidance point again; otherwise it becomes the new guidance point.

#ifndef RANGETAP_GOS_PLANNER_HPP_
#define RANGETAP_GOS_PLANNER_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rangetap/geometry.hpp"

namespace rangetap {

struct PlannedPath {
  std::vector<Point> waypoints;
  double length = 0.0;

  static PlannedPath from_waypoints(std::vector<Point> waypoints);
};

double path_length(std::span<const Point> waypoints);
inline double path_length(const PlannedPath& path) {
  return path_length(path.waypoints);
}

class PlannerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class PointInsideObstacle : public PlannerError {
 public:
  using PlannerError::PlannerError;
};
class EmptyCandidates : public PlannerError {
 public:
  using PlannerError::PlannerError;
};
class NoVisibleVertex : public PlannerError {
 public:
  using PlannerError::PlannerError;
};

// Convex vertices of obstacle that p sees past that obstacle alone.
// Vertices coinciding with p are skipped.
std::vector<Point> subopt_vertices(const Point& p, const Polygon& obstacle);

struct ExtremePair {
  Point left;
  Point right;
};
ExtremePair extreme_vertices(const Segment& line, std::span<const Point> candidates);

// The members of {left, right} reachable from p and seeing guide, both with
// respect to obstacle only.
std::vector<Point> opt_vertices(const Point& p, const Point& guide,
                                const Polygon& obstacle,
                                const ExtremePair& extremes);

// Candidate guidance point contributed by one blocking obstacle. Throws
// NoVisibleVertex when p sees none of the obstacle's convex vertices.
Point candidate_guidance_point(const Point& p, const Segment& line,
                               const Polygon& obstacle);

// Best candidate over all blocking obstacles; nullopt if any obstacle has no
// visible vertex.
std::optional<Point> optimal_global_guidance_point(
    const Point& p, const Segment& line, std::span<const Polygon* const> blocking);

enum class PlanStatus {
  kOk,
  kNoGuidancePoint,  // some blocking obstacle had no visible vertex
  kIterationCapExceeded,
  kStartOrGoalInsideObstacle,
};

const char* to_string(PlanStatus status);

struct PlanResult {
  std::optional<PlannedPath> path;
  PlanStatus status = PlanStatus::kOk;
  int iterations = 0;
  // Set when start or goal was inside the inflated margin and got moved out.
  std::string diagnostic;

  bool ok() const { return path.has_value(); }
};

// Iteration cap for a map with the given number of obstacle vertices.
int iteration_cap(std::size_t vertex_count);

// Plans against an already inflated and merged obstacle set.
PlanResult plan_global_path(const Point& start, const Point& goal,
                            const ObstacleSet& obstacles);

// Inflates raw by radius, merges, then plans.
PlanResult plan_global_path(const Point& start, const Point& goal,
                            double radius, const std::vector<Polygon>& raw);

}  // namespace rangetap

#endif  // RANGETAP_GOS_PLANNER_HPP_
