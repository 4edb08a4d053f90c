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

// Test-side reference computations. These deliberately avoid the library's
// predicates so that a shared bug cannot make a check pass vacuously.

#ifndef RANGETAP_TESTS_INDEPENDENT_HPP_
#define RANGETAP_TESTS_INDEPENDENT_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include "rangetap/geometry.hpp"

namespace rangetap::testing {

inline double seg_len(const Point& a, const Point& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

inline double polyline_length(const std::vector<Point>& pts) {
  double total = 0.0;
  for (std::size_t k = 1; k < pts.size(); ++k) total += seg_len(pts[k - 1], pts[k]);
  return total;
}

// Strictly inside a convex polygon, with every edge clearing p by more than
// margin. Orientation agnostic.
inline bool deep_inside_convex(const Point& p, const std::vector<Point>& poly,
                               double margin) {
  int sign = 0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point& a = poly[k];
    const Point& b = poly[(k + 1) % poly.size()];
    const double len = seg_len(a, b);
    if (len == 0.0) continue;
    const double side = ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)) / len;
    if (std::abs(side) <= margin) return false;
    const int s = side > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return sign != 0;
}

// Samples the open segment densely and reports whether any sample sits more
// than margin inside a convex polygon.
inline bool sampled_segment_enters(const Point& a, const Point& b,
                                   const std::vector<Point>& poly,
                                   double margin, int samples = 256) {
  for (int k = 1; k < samples; ++k) {
    const double t = static_cast<double>(k) / samples;
    const Point p{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    if (deep_inside_convex(p, poly, margin)) return true;
  }
  return false;
}

// Gift-wrapping hull by exhaustive edge test, counter-clockwise, starting at
// the lexicographically smallest point. Collinear points are dropped.
inline std::vector<Point> brute_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point> hull;
  std::size_t current = 0;
  do {
    hull.push_back(pts[current]);
    std::size_t next = (current + 1) % pts.size();
    for (std::size_t cand = 0; cand < pts.size(); ++cand) {
      if (cand == current) continue;
      const Point& o = pts[current];
      const double c = (pts[next].x - o.x) * (pts[cand].y - o.y) -
                       (pts[next].y - o.y) * (pts[cand].x - o.x);
      // cand is clockwise of next, or collinear and farther.
      if (c < 0 || (c == 0 && seg_len(o, pts[cand]) > seg_len(o, pts[next]))) {
        next = cand;
      }
    }
    current = next;
  } while (current != 0 && hull.size() <= pts.size());
  return hull;
}

inline double reward_from_arrivals(const std::vector<double>& arrivals,
                                   double lambda) {
  double total = 0.0;
  for (double d : arrivals) total += std::pow(lambda, d);
  return total;
}

// Cumulative distance at which the polyline first passes through each target
// in order. Returns an empty vector if a target is never visited.
inline std::vector<double> arrivals_along(const std::vector<Point>& path,
                                          const std::vector<Point>& targets,
                                          double tol = 1e-9) {
  std::vector<double> out;
  double acc = 0.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < path.size() && next < targets.size(); ++k) {
    if (k > 0) acc += seg_len(path[k - 1], path[k]);
    while (next < targets.size() && seg_len(path[k], targets[next]) <= tol) {
      out.push_back(acc);
      ++next;
    }
  }
  if (next != targets.size()) return {};
  return out;
}

}  // namespace rangetap::testing

#endif  // RANGETAP_TESTS_INDEPENDENT_HPP_
