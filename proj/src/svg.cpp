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

#include "rangetap/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace rangetap {

namespace {

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

SvgPlot::SvgPlot(const Rect& bounds, double width_px)
    : bounds_(bounds), width_px_(width_px) {
  const double w = std::max(bounds.width(), 1e-9);
  const double h = std::max(bounds.height(), 1e-9);
  scale_ = width_px / w;
  height_px_ = h * scale_;
}

Point SvgPlot::map(const Point& p) const {
  return {(p.x - bounds_.min_x) * scale_, (bounds_.max_y - p.y) * scale_};
}

void SvgPlot::add_obstacle(const Polygon& polygon, bool inflated) {
  std::string pts;
  for (const Point& v : polygon.vertices) {
    const Point q = map(v);
    if (!pts.empty()) pts += ' ';
    pts += fmt(q.x) + "," + fmt(q.y);
  }
  if (inflated) {
    obstacles_.push_back("<polygon class=\"inflated\" points=\"" + pts +
                         "\" fill=\"none\" stroke=\"#999999\" "
                         "stroke-dasharray=\"4 3\"/>");
  } else {
    obstacles_.push_back("<polygon class=\"obstacle\" data-id=\"" +
                         std::to_string(polygon.id) + "\" points=\"" + pts +
                         "\" fill=\"#555555\" stroke=\"#222222\"/>");
  }
}

void SvgPlot::add_path(std::span<const Point> waypoints, int series,
                       std::string label) {
  std::string pts;
  for (const Point& v : waypoints) {
    const Point q = map(v);
    if (!pts.empty()) pts += ' ';
    pts += fmt(q.x) + "," + fmt(q.y);
  }
  const char* color = kPalette[static_cast<std::size_t>(std::max(series, 0)) %
                               kPalette.size()];
  std::string el = "<polyline class=\"trajectory\" points=\"" + pts +
                   "\" fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"2\"";
  if (!label.empty()) el += " data-label=\"" + escape(label) + "\"";
  paths_.push_back(el + "/>");
}

void SvgPlot::add_start(const Point& p, std::string label) {
  const Point q = map(p);
  markers_.push_back("<rect class=\"start\" x=\"" + fmt(q.x - 5) + "\" y=\"" +
                     fmt(q.y - 5) +
                     "\" width=\"10\" height=\"10\" fill=\"#2ca02c\"/>");
  if (!label.empty()) {
    markers_.push_back("<text x=\"" + fmt(q.x + 7) + "\" y=\"" + fmt(q.y - 7) +
                       "\" font-size=\"10\">" + escape(label) + "</text>");
  }
}

void SvgPlot::add_task(const Point& p, std::string label) {
  const Point q = map(p);
  markers_.push_back("<circle class=\"task\" cx=\"" + fmt(q.x) + "\" cy=\"" +
                     fmt(q.y) + "\" r=\"4\" fill=\"#d62728\"/>");
  if (!label.empty()) {
    markers_.push_back("<text x=\"" + fmt(q.x + 5) + "\" y=\"" + fmt(q.y + 12) +
                       "\" font-size=\"9\">" + escape(label) + "</text>");
  }
}

void SvgPlot::add_goal(const Point& p) {
  const Point q = map(p);
  markers_.push_back("<circle class=\"goal\" cx=\"" + fmt(q.x) + "\" cy=\"" +
                     fmt(q.y) +
                     "\" r=\"6\" fill=\"none\" stroke=\"#d62728\" "
                     "stroke-width=\"2\"/>");
}

std::string SvgPlot::str() const {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width_px_)
     << "\" height=\"" << fmt(height_px_) << "\" viewBox=\"0 0 "
     << fmt(width_px_) << " " << fmt(height_px_) << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width_px_) << "\" height=\""
     << fmt(height_px_) << "\" fill=\"white\" stroke=\"black\"/>\n";
  const auto group = [&os](const char* id, const std::vector<std::string>& els) {
    os << "<g id=\"" << id << "\">\n";
    for (const auto& e : els) os << "  " << e << "\n";
    os << "</g>\n";
  };
  group("obstacles", obstacles_);
  group("paths", paths_);
  group("markers", markers_);
  os << "</svg>\n";
  return os.str();
}

std::string mission_svg(const Scenario& scenario, const MissionReport& report) {
  SvgPlot plot(scenario.bounds);
  for (const Polygon& p : scenario.obstacles_raw) plot.add_obstacle(p);
  std::vector<double> radii;
  for (const RobotSpec& r : scenario.robots) radii.push_back(r.radius);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  for (double r : radii) {
    for (const Polygon& p : ObstacleSet::build(scenario.obstacles_raw, r).obstacles) {
      plot.add_obstacle(p, true);
    }
  }
  int series = 0;
  for (const RobotReport& rr : report.robots) {
    if (rr.route.size() >= 2) {
      plot.add_path(rr.route, series, "robot " + std::to_string(rr.robot_id));
    }
    ++series;
  }
  for (const RobotSpec& r : scenario.robots) {
    plot.add_start(r.start, "R" + std::to_string(r.id));
  }
  for (const TaskSpec& t : scenario.tasks) {
    plot.add_task(t.position, "T" + std::to_string(t.id));
  }
  return plot.str();
}

std::string plan_svg(const Rect& bounds, const ObstacleSet& obstacles,
                     std::span<const Point> path, const Point& start,
                     const Point& goal) {
  SvgPlot plot(bounds);
  for (const Polygon& p : obstacles.raw) plot.add_obstacle(p);
  if (obstacles.inflation_radius > 0.0) {
    for (const Polygon& p : obstacles.obstacles) plot.add_obstacle(p, true);
  }
  if (path.size() >= 2) plot.add_path(path, 0);
  plot.add_start(start);
  plot.add_goal(goal);
  return plot.str();
}

}  // namespace rangetap
