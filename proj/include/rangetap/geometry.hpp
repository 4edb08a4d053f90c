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

// Planar primitives and the obstacle pipeline (inflate, merge, intersect).
// All coordinates are meters. Incidence predicates use kEps scaled by the
// magnitude of the coordinates involved, so 6 km maps behave like 6 m maps.

#ifndef RANGETAP_GEOMETRY_HPP_
#define RANGETAP_GEOMETRY_HPP_

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rangetap {

inline constexpr double kEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
  Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
  Point operator*(double s) const { return {x * s, y * s}; }
};

// Lexicographic (x, then y). Used as the total tie-break order everywhere.
bool lex_less(const Point& a, const Point& b);

double dot(const Point& a, const Point& b);
double cross(const Point& a, const Point& b);
double norm(const Point& a);
double distance(const Point& a, const Point& b);
bool is_finite(const Point& p);

// Directed segment a -> b.
struct Segment {
  Point a;
  Point b;

  double length() const { return distance(a, b); }
};

struct Polygon {
  int id = 0;
  std::vector<Point> vertices;  // CCW, simple, no consecutive duplicates
};

struct BoundingBox {
  double min_x, min_y, max_x, max_y;
  bool overlaps(const BoundingBox& o, double tol) const {
    return min_x <= o.max_x + tol && o.min_x <= max_x + tol &&
           min_y <= o.max_y + tol && o.min_y <= max_y + tol;
  }
};

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InvalidPolygon : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class NegativeRadius : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class DegenerateSegment : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// Twice the signed area; positive for CCW.
double signed_area2(std::span<const Point> ring);
BoundingBox bounding_box(std::span<const Point> pts);

// Tolerance for incidence tests on coordinates of this magnitude.
double tolerance_for(std::span<const Point> pts);

// Drops consecutive duplicates and reorders CW input to CCW. Does not
// validate; call validate_polygon afterwards.
Polygon normalized(Polygon poly);

// Throws InvalidPolygon naming the violated invariant.
void validate_polygon(const Polygon& poly);
bool is_valid_polygon(const Polygon& poly);
bool is_convex(const Polygon& poly);

double point_segment_distance(const Point& p, const Segment& seg);

// Distance of v from the infinite line through seg, positive on the left of
// a -> b. Throws DegenerateSegment when |seg| = 0.
double signed_side_distance(const Point& v, const Segment& seg);

double boundary_distance(const Point& p, const Polygon& poly);
Point nearest_boundary_point(const Point& p, const Polygon& poly);

// Boundary points (within tolerance) count as outside.
bool strictly_inside(const Point& p, const Polygon& poly);
// Boundary points count as inside.
bool inside_or_on(const Point& p, const Polygon& poly);

// True iff the open interior of seg enters the interior of poly. Grazing a
// vertex or sliding along an edge is not an intersection.
bool segment_intersects_polygon(const Segment& seg, const Polygon& poly);

// Vertices with a strict left turn in CCW order, in polygon order.
std::vector<Point> convex_vertices(const Polygon& poly);

// Andrew's monotone chain; collinear points dropped; CCW from lowest-left.
std::vector<Point> convex_hull(std::vector<Point> pts);

// Triangulates by ear clipping, then removes diagonals while the union stays
// convex (Hertel-Mehlhorn). Input must be a valid polygon.
std::vector<Polygon> convex_decomposition(const Polygon& poly);

// Miter-join outward offset of a convex CCW polygon. Corners whose miter
// would reach further than 4r from the vertex are beveled by the chord
// tangent to the radius-r arc.
Polygon offset_convex(const Polygon& poly, double r);

// Grows poly by r. Concave input is decomposed, each part offset, and the
// parts re-unified by merge_overlapping.
Polygon inflate_polygon(const Polygon& poly, double r);

// True if the closed polygons share at least one point (within tolerance).
bool polygons_touch(const Polygon& a, const Polygon& b);

// Replaces touching/overlapping pairs with their convex hull until none
// remain. Merged polygons keep the smallest id. Output is sorted by id.
std::vector<Polygon> merge_overlapping(std::vector<Polygon> obstacles);

// Inflated, merged planning obstacles plus the raw polygons they came from.
struct ObstacleSet {
  std::vector<Polygon> obstacles;
  double inflation_radius = 0.0;
  std::vector<Polygon> raw;

  static ObstacleSet build(const std::vector<Polygon>& raw, double radius);
  std::size_t vertex_count() const;
};

// Obstacles whose interior the segment enters, ascending by id.
std::vector<const Polygon*> check_intersect(const Segment& seg,
                                            const ObstacleSet& set);
bool segment_is_free(const Segment& seg, const ObstacleSet& set);

// The obstacle strictly containing p, if any.
const Polygon* containing_obstacle(const Point& p,
                                   std::span<const Polygon> obstacles);

std::string to_string(const Point& p);

}  // namespace rangetap

#endif  // RANGETAP_GEOMETRY_HPP_
