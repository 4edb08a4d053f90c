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

// Static SVG plots. Output has three groups, in drawing order:
// <g id="obstacles">, <g id="paths"> and <g id="markers">.

#ifndef RANGETAP_SVG_HPP_
#define RANGETAP_SVG_HPP_

#include <span>
#include <string>
#include <vector>

#include "rangetap/geometry.hpp"
#include "rangetap/oracles.hpp"
#include "rangetap/sim.hpp"

namespace rangetap {

class SvgPlot {
 public:
  // World coordinates inside bounds map onto a canvas width_px wide; y is
  // flipped so north is up.
  explicit SvgPlot(const Rect& bounds, double width_px = 800.0);

  void add_obstacle(const Polygon& polygon, bool inflated = false);
  void add_path(std::span<const Point> waypoints, int series, std::string label = "");
  void add_start(const Point& p, std::string label = "");
  void add_task(const Point& p, std::string label = "");
  void add_goal(const Point& p);

  std::string str() const;

 private:
  Point map(const Point& p) const;
  double scale_len(double meters) const { return meters * scale_; }

  Rect bounds_;
  double scale_;
  double width_px_;
  double height_px_;
  std::vector<std::string> obstacles_;
  std::vector<std::string> paths_;
  std::vector<std::string> markers_;
};

// Obstacles (raw and inflated), robot routes, start and task markers.
std::string mission_svg(const Scenario& scenario, const MissionReport& report);

std::string plan_svg(const Rect& bounds, const ObstacleSet& obstacles,
                     std::span<const Point> path, const Point& start,
                     const Point& goal);

}  // namespace rangetap

#endif  // RANGETAP_SVG_HPP_
