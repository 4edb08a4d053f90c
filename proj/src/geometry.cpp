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

#include "rangetap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace rangetap {

bool lex_less(const Point& a, const Point& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

double dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
double cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
double norm(const Point& a) { return std::hypot(a.x, a.y); }
double distance(const Point& a, const Point& b) { return norm(b - a); }
bool is_finite(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

double signed_area2(std::span<const Point> ring) {
  double s = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    s += cross(ring[i], ring[(i + 1) % n]);
  }
  return s;
}

BoundingBox bounding_box(std::span<const Point> pts) {
  BoundingBox box{std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  for (const Point& p : pts) {
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

double tolerance_for(std::span<const Point> pts) {
  double m = 1.0;
  for (const Point& p : pts) m = std::max({m, std::abs(p.x), std::abs(p.y)});
  return kEps * m;
}

namespace {

double tolerance_for(const Segment& seg, const Polygon& poly) {
  double m = std::max({1.0, std::abs(seg.a.x), std::abs(seg.a.y),
                       std::abs(seg.b.x), std::abs(seg.b.y)});
  for (const Point& p : poly.vertices) {
    m = std::max({m, std::abs(p.x), std::abs(p.y)});
  }
  return kEps * m;
}

double tolerance_for(const Point& q, const Polygon& poly) {
  double m = std::max({1.0, std::abs(q.x), std::abs(q.y)});
  for (const Point& p : poly.vertices) {
    m = std::max({m, std::abs(p.x), std::abs(p.y)});
  }
  return kEps * m;
}

// Parameter of the projection of p onto the line a + t (b - a).
double project_param(const Point& p, const Point& a, const Point& b) {
  const Point d = b - a;
  return dot(p - a, d) / dot(d, d);
}

double segment_segment_distance(const Segment& s, const Segment& t) {
  const Point r = s.b - s.a;
  const Point q = t.b - t.a;
  const double den = cross(r, q);
  if (den != 0.0) {
    const double u = cross(t.a - s.a, q) / den;
    const double v = cross(t.a - s.a, r) / den;
    if (u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0) return 0.0;
  }
  return std::min({point_segment_distance(s.a, t), point_segment_distance(s.b, t),
                   point_segment_distance(t.a, s), point_segment_distance(t.b, s)});
}

// Intersection of the lines p + s*d and q + t*e. Caller guarantees they are
// not parallel.
Point line_intersection(const Point& p, const Point& d, const Point& q,
                        const Point& e) {
  const double s = cross(q - p, e) / cross(d, e);
  return p + d * s;
}

bool crossing_number_odd(const Point& p, const std::vector<Point>& v) {
  bool inside = false;
  for (std::size_t i = 0, n = v.size(), j = n - 1; i < n; j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double x =
          v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

Polygon normalized(Polygon poly) {
  std::vector<Point> out;
  out.reserve(poly.vertices.size());
  for (const Point& p : poly.vertices) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  if (signed_area2(out) < 0.0) std::reverse(out.begin(), out.end());
  poly.vertices = std::move(out);
  return poly;
}

void validate_polygon(const Polygon& poly) {
  const auto& v = poly.vertices;
  const std::string who = "polygon " + std::to_string(poly.id) + ": ";
  if (v.size() < 3) throw InvalidPolygon(who + "fewer than 3 vertices");
  for (const Point& p : v) {
    if (!is_finite(p)) throw InvalidPolygon(who + "non-finite vertex");
  }
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == v[(i + 1) % n]) {
      throw InvalidPolygon(who + "consecutive duplicate vertex");
    }
  }
  if (signed_area2(v) <= 0.0) {
    throw InvalidPolygon(who + "not counter-clockwise (or zero area)");
  }
  const double tol = tolerance_for(v);
  for (std::size_t i = 0; i < n; ++i) {
    const Segment ei{v[i], v[(i + 1) % n]};
    for (std::size_t j = i + 1; j < n; ++j) {
      const Segment ej{v[j], v[(j + 1) % n]};
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges share one vertex; they must not fold back.
        const Point& shared = (j == i + 1) ? v[j] : v[i];
        const Point& pa = (j == i + 1) ? v[i] : v[j];
        const Point& pb = (j == i + 1) ? v[(j + 1) % n] : v[1];
        const Point da = pa - shared;
        const Point db = pb - shared;
        if (std::abs(cross(da, db)) <= tol * (norm(da) + norm(db)) &&
            dot(da, db) > 0.0) {
          throw InvalidPolygon(who + "edges fold back on themselves");
        }
        continue;
      }
      if (segment_segment_distance(ei, ej) <= tol) {
        throw InvalidPolygon(who + "self-intersecting");
      }
    }
  }
}

bool is_valid_polygon(const Polygon& poly) {
  try {
    validate_polygon(poly);
    return true;
  } catch (const InvalidPolygon&) {
    return false;
  }
}

bool is_convex(const Polygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  const double tol = tolerance_for(v);
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[(i + n - 1) % n];
    const Point b = v[i];
    const Point c = v[(i + 1) % n];
    if (cross(b - a, c - b) < -tol * (distance(a, b) + distance(b, c))) {
      return false;
    }
  }
  return true;
}

double point_segment_distance(const Point& p, const Segment& seg) {
  const Point d = seg.b - seg.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, seg.a);
  const double t = std::clamp(dot(p - seg.a, d) / len2, 0.0, 1.0);
  return distance(p, seg.a + d * t);
}

double signed_side_distance(const Point& v, const Segment& seg) {
  const double len = seg.length();
  if (len == 0.0) throw DegenerateSegment("signed_side_distance: zero-length segment");
  return cross(seg.b - seg.a, v - seg.a) / len;
}

double boundary_distance(const Point& p, const Polygon& poly) {
  const auto& v = poly.vertices;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    best = std::min(best, point_segment_distance(p, {v[i], v[(i + 1) % n]}));
  }
  return best;
}

Point nearest_boundary_point(const Point& p, const Polygon& poly) {
  const auto& v = poly.vertices;
  double best = std::numeric_limits<double>::infinity();
  Point best_point = v.front();
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point a = v[i];
    const Point d = v[(i + 1) % n] - a;
    const double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
    const Point q = a + d * t;
    const double dist = distance(p, q);
    if (dist < best) {
      best = dist;
      best_point = q;
    }
  }
  return best_point;
}

bool strictly_inside(const Point& p, const Polygon& poly) {
  const BoundingBox box = bounding_box(poly.vertices);
  if (p.x < box.min_x || p.x > box.max_x || p.y < box.min_y || p.y > box.max_y)
    return false;
  if (boundary_distance(p, poly) <= tolerance_for(p, poly)) return false;
  return crossing_number_odd(p, poly.vertices);
}

bool inside_or_on(const Point& p, const Polygon& poly) {
  if (boundary_distance(p, poly) <= tolerance_for(p, poly)) return true;
  return crossing_number_odd(p, poly.vertices);
}

bool segment_intersects_polygon(const Segment& seg, const Polygon& poly) {
  const Point d = seg.b - seg.a;
  if (dot(d, d) == 0.0) return false;
  const double tol = tolerance_for(seg, poly);
  const BoundingBox sb = bounding_box(std::vector<Point>{seg.a, seg.b});
  if (!sb.overlaps(bounding_box(poly.vertices), tol)) return false;

  // Every parameter at which the segment meets the boundary. Between two
  // consecutive parameters the segment is entirely inside or outside, so a
  // midpoint probe per gap decides.
  const double len = norm(d);
  std::vector<double> ts{0.0, 1.0};
  const auto& v = poly.vertices;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point& u = v[i];
    const Point& w = v[(i + 1) % n];
    const double su = cross(d, u - seg.a) / len;
    const double sw = cross(d, w - seg.a) / len;
    const bool u_on_line = std::abs(su) <= tol;
    const bool w_on_line = std::abs(sw) <= tol;
    if (u_on_line) ts.push_back(project_param(u, seg.a, seg.b));
    if (w_on_line) ts.push_back(project_param(w, seg.a, seg.b));
    if (u_on_line || w_on_line) continue;
    if ((su > 0.0) == (sw > 0.0)) continue;
    const Point e = w - u;
    const double den = cross(d, e);
    if (den == 0.0) continue;
    ts.push_back(cross(u - seg.a, e) / den);
  }
  for (double& t : ts) t = std::clamp(t, 0.0, 1.0);
  std::sort(ts.begin(), ts.end());
  const double min_gap = tol / len;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    if (ts[k + 1] - ts[k] <= min_gap) continue;
    const Point mid = seg.a + d * (0.5 * (ts[k] + ts[k + 1]));
    if (boundary_distance(mid, poly) > tol && crossing_number_odd(mid, v)) {
      return true;
    }
  }
  return false;
}

std::vector<Point> convex_vertices(const Polygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  const double tol = tolerance_for(v);
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[(i + n - 1) % n];
    const Point b = v[i];
    const Point c = v[(i + 1) % n];
    if (cross(b - a, c - b) > tol * (distance(a, b) + distance(b, c))) {
      out.push_back(b);
    }
  }
  return out;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  const double tol = tolerance_for(pts);
  auto turns_left = [tol](const Point& o, const Point& a, const Point& b) {
    return cross(a - o, b - o) > tol * (distance(o, a) + distance(o, b));
  };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && !turns_left(hull[k - 2], hull[k - 1], pts[i])) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Polygon> convex_decomposition(const Polygon& poly) {
  if (is_convex(poly)) return {poly};
  const auto& v = poly.vertices;
  const double tol = tolerance_for(v);

  // Ear clipping over vertex indices.
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> ring(v.size());
  std::iota(ring.begin(), ring.end(), 0);
  auto turn = [&](std::size_t a, std::size_t b, std::size_t c) {
    return cross(v[b] - v[a], v[c] - v[b]);
  };
  while (ring.size() > 3) {
    const std::size_t n = ring.size();
    bool clipped = false;
    for (std::size_t i = 0; i < n && !clipped; ++i) {
      const std::size_t a = ring[(i + n - 1) % n];
      const std::size_t b = ring[i];
      const std::size_t c = ring[(i + 1) % n];
      if (turn(a, b, c) <= tol * (distance(v[a], v[b]) + distance(v[b], v[c])))
        continue;
      const Polygon tri{0, {v[a], v[b], v[c]}};
      bool blocked = false;
      for (std::size_t idx : ring) {
        if (idx == a || idx == b || idx == c) continue;
        if (inside_or_on(v[idx], tri)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      parts.push_back({a, b, c});
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
      clipped = true;
    }
    if (!clipped) {
      // Only degenerate (collinear) corners remain; drop the flattest.
      std::size_t flattest = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        const double t =
            std::abs(turn(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]));
        if (t < best) {
          best = t;
          flattest = i;
        }
      }
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(flattest));
    }
  }
  if (std::abs(turn(ring[0], ring[1], ring[2])) > 0.0) parts.push_back(ring);

  // Hertel-Mehlhorn: drop a shared diagonal whenever the union stays convex.
  auto as_polygon = [&](const std::vector<std::size_t>& idx) {
    Polygon p{poly.id, {}};
    for (std::size_t i : idx) p.vertices.push_back(v[i]);
    return p;
  };
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < parts.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < parts.size() && !merged; ++j) {
        const auto& pi = parts[i];
        const auto& pj = parts[j];
        for (std::size_t a = 0; a < pi.size() && !merged; ++a) {
          const std::size_t u = pi[a];
          const std::size_t w = pi[(a + 1) % pi.size()];
          const auto it = std::find(pj.begin(), pj.end(), w);
          if (it == pj.end()) continue;
          const std::size_t b = static_cast<std::size_t>(it - pj.begin());
          if (pj[(b + 1) % pj.size()] != u) continue;
          // pi walked from w around to u, then pj's vertices strictly
          // between u and w.
          std::vector<std::size_t> joined;
          for (std::size_t k = 0; k < pi.size(); ++k) {
            joined.push_back(pi[(a + 1 + k) % pi.size()]);
          }
          for (std::size_t k = 2; k < pj.size(); ++k) {
            joined.push_back(pj[(b + k) % pj.size()]);
          }
          if (!is_convex(as_polygon(joined))) continue;
          parts[i] = std::move(joined);
          parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
  }

  std::vector<Polygon> out;
  out.reserve(parts.size());
  for (const auto& idx : parts) out.push_back(normalized(as_polygon(idx)));
  return out;
}

Polygon offset_convex(const Polygon& poly, double r) {
  if (r < 0.0) throw NegativeRadius("offset radius must be >= 0");
  if (r == 0.0) return poly;
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  const double miter_limit = 4.0 * r;
  Polygon out{poly.id, {}};
  out.vertices.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Point prev = v[(i + n - 1) % n];
    const Point cur = v[i];
    const Point next = v[(i + 1) % n];
    const Point e1 = (cur - prev) * (1.0 / distance(prev, cur));
    const Point e2 = (next - cur) * (1.0 / distance(cur, next));
    // Outward normals of a CCW ring point to the right of each edge.
    const Point n1{e1.y, -e1.x};
    const Point n2{e2.y, -e2.x};
    const double c = dot(n1, n2);
    if (c > 1.0 - 1e-12) {
      out.vertices.push_back(cur + n1 * r);
      continue;
    }
    const Point miter = (n1 + n2) * (r / (1.0 + c));
    if (norm(miter) <= miter_limit) {
      out.vertices.push_back(cur + miter);
      continue;
    }
    // Bevel: the chord tangent to the arc at the bisector.
    const Point bis = (n1 + n2) * (1.0 / norm(n1 + n2));
    const Point tangent_point = cur + bis * r;
    const Point chord_dir{-bis.y, bis.x};
    out.vertices.push_back(
        line_intersection(cur + n1 * r, e1, tangent_point, chord_dir));
    out.vertices.push_back(
        line_intersection(cur + n2 * r, e2, tangent_point, chord_dir));
  }
  return normalized(std::move(out));
}

Polygon inflate_polygon(const Polygon& poly, double r) {
  if (r < 0.0) throw NegativeRadius("inflation radius must be >= 0");
  validate_polygon(poly);
  if (r == 0.0) return poly;
  if (is_convex(poly)) return offset_convex(poly, r);
  std::vector<Polygon> grown;
  for (const Polygon& part : convex_decomposition(poly)) {
    grown.push_back(offset_convex(part, r));
  }
  auto merged = merge_overlapping(std::move(grown));
  if (merged.size() != 1) {
    // Parts of one polygon always touch; this is a geometry bug if hit.
    throw GeometryError("inflate_polygon: decomposition did not reunify");
  }
  merged.front().id = poly.id;
  return merged.front();
}

bool polygons_touch(const Polygon& a, const Polygon& b) {
  std::vector<Point> all = a.vertices;
  all.insert(all.end(), b.vertices.begin(), b.vertices.end());
  const double tol = tolerance_for(all);
  if (!bounding_box(a.vertices).overlaps(bounding_box(b.vertices), tol))
    return false;
  const auto& va = a.vertices;
  const auto& vb = b.vertices;
  for (std::size_t i = 0; i < va.size(); ++i) {
    const Segment ea{va[i], va[(i + 1) % va.size()]};
    for (std::size_t j = 0; j < vb.size(); ++j) {
      const Segment eb{vb[j], vb[(j + 1) % vb.size()]};
      if (segment_segment_distance(ea, eb) <= tol) return true;
    }
  }
  return inside_or_on(va.front(), b) || inside_or_on(vb.front(), a);
}

std::vector<Polygon> merge_overlapping(std::vector<Polygon> obstacles) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < obstacles.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < obstacles.size() && !changed; ++j) {
        if (!polygons_touch(obstacles[i], obstacles[j])) continue;
        std::vector<Point> pts = obstacles[i].vertices;
        pts.insert(pts.end(), obstacles[j].vertices.begin(),
                   obstacles[j].vertices.end());
        Polygon hull{std::min(obstacles[i].id, obstacles[j].id),
                     convex_hull(std::move(pts))};
        obstacles[i] = std::move(hull);
        obstacles.erase(obstacles.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
      }
    }
  }
  std::sort(obstacles.begin(), obstacles.end(),
            [](const Polygon& a, const Polygon& b) { return a.id < b.id; });
  return obstacles;
}

ObstacleSet ObstacleSet::build(const std::vector<Polygon>& raw, double radius) {
  if (radius < 0.0) throw NegativeRadius("inflation radius must be >= 0");
  ObstacleSet set;
  set.inflation_radius = radius;
  set.raw = raw;
  std::vector<Polygon> grown;
  grown.reserve(raw.size());
  for (const Polygon& p : raw) grown.push_back(inflate_polygon(p, radius));
  set.obstacles = merge_overlapping(std::move(grown));
  return set;
}

std::size_t ObstacleSet::vertex_count() const {
  std::size_t n = 0;
  for (const Polygon& p : obstacles) n += p.vertices.size();
  return n;
}

std::vector<const Polygon*> check_intersect(const Segment& seg,
                                            const ObstacleSet& set) {
  std::vector<const Polygon*> hits;
  for (const Polygon& p : set.obstacles) {
    if (segment_intersects_polygon(seg, p)) hits.push_back(&p);
  }
  std::sort(hits.begin(), hits.end(),
            [](const Polygon* a, const Polygon* b) { return a->id < b->id; });
  return hits;
}

bool segment_is_free(const Segment& seg, const ObstacleSet& set) {
  return std::none_of(
      set.obstacles.begin(), set.obstacles.end(),
      [&](const Polygon& p) { return segment_intersects_polygon(seg, p); });
}

const Polygon* containing_obstacle(const Point& p,
                                   std::span<const Polygon> obstacles) {
  for (const Polygon& poly : obstacles) {
    if (strictly_inside(p, poly)) return &poly;
  }
  return nullptr;
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(10);
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

}  // namespace rangetap
