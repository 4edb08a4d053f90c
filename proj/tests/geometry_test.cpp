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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rangetap/geometry.hpp"
#include "support/independent.hpp"

namespace rangetap {
namespace {

namespace ind = rangetap::testing;

Polygon unit_square(int id = 0) { return {id, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}}; }

Polygon box(int id, double x0, double y0, double x1, double y1) {
  return {id, {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

// Rotates the vertex list so that comparisons ignore the starting vertex.
std::vector<Point> canonical(std::vector<Point> v) {
  const auto it = std::min_element(v.begin(), v.end(), lex_less);
  std::rotate(v.begin(), it, v.end());
  return v;
}

void expect_same_ring(const std::vector<Point>& got, const std::vector<Point>& want,
                      double tol = 1e-12) {
  const auto a = canonical(got);
  const auto b = canonical(want);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_NEAR(a[k].x, b[k].x, tol) << "vertex " << k;
    EXPECT_NEAR(a[k].y, b[k].y, tol) << "vertex " << k;
  }
}

// Random convex polygon from the hull of points on a jittered circle.
Polygon random_convex(std::mt19937_64& rng, int id, Point center, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  const int n = 3 + static_cast<int>(u(rng) * 6);
  for (int k = 0; k < n; ++k) {
    const double t = 2 * std::numbers::pi * (k + 0.8 * u(rng)) / n;
    const double r = radius * (0.5 + 0.5 * u(rng));
    pts.push_back({center.x + r * std::cos(t), center.y + r * std::sin(t)});
  }
  return normalized(Polygon{id, convex_hull(pts)});
}

TEST(InflatePolygon, ZeroRadiusIsIdentity) {
  expect_same_ring(inflate_polygon(unit_square(), 0.0).vertices, unit_square().vertices);
}

TEST(InflatePolygon, SquareMiterOffset) {
  expect_same_ring(inflate_polygon(unit_square(), 0.5).vertices,
                   {{-0.5, -0.5}, {1.5, -0.5}, {1.5, 1.5}, {-0.5, 1.5}});
}

TEST(InflatePolygon, TriangleKeepsClearanceFromInput) {
  const Polygon tri{0, {{0, 0}, {4, 0}, {0, 3}}};
  const double r = 0.1;
  const Polygon out = inflate_polygon(tri, r);
  ASSERT_TRUE(is_valid_polygon(out));
  // Every input boundary point sits at least r inside the output.
  for (int k = 0; k < 1000; ++k) {
    const double t = k / 1000.0 * 3.0;
    const int e = static_cast<int>(t);
    const double f = t - e;
    const Point a = tri.vertices[e];
    const Point b = tri.vertices[(e + 1) % 3];
    const Point p{a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
    ASSERT_TRUE(strictly_inside(p, out));
    EXPECT_GE(boundary_distance(p, out), r - 1e-9);
  }
}

TEST(InflatePolygon, SharpCornerIsBeveled) {
  // Interior angle near 10 degrees: the miter would reach far beyond 4r.
  const Polygon spike{0, {{0, 0}, {10, 0.9}, {0, 1.8}}};
  const double r = 0.5;
  const Polygon out = inflate_polygon(spike, r);
  EXPECT_GT(out.vertices.size(), 3u);
  for (const Point& v : out.vertices) {
    EXPECT_LE(boundary_distance(v, spike), 4 * r + 1e-9);
    EXPECT_GE(boundary_distance(v, spike), r - 1e-9);
  }
}

TEST(InflatePolygon, ConcaveInputCoversOffsetRegion) {
  const Polygon ell{0, {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
  const double r = 0.25;
  const ObstacleSet set = ObstacleSet::build({ell}, r);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.5, 2.5);
  for (int k = 0; k < 2000; ++k) {
    const Point p{u(rng), u(rng)};
    const bool near = inside_or_on(p, ell) || boundary_distance(p, ell) < r - 1e-9;
    if (!near) continue;
    EXPECT_NE(containing_obstacle(p, set.obstacles), nullptr) << to_string(p);
  }
  for (const Polygon& poly : set.obstacles) EXPECT_TRUE(is_convex(poly));
}

TEST(InflatePolygon, Monotone) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Polygon p = random_convex(rng, 0, {0, 0}, 3.0);
    const Polygon small = inflate_polygon(p, 0.2);
    const Polygon big = inflate_polygon(p, 0.6);
    for (const Point& v : small.vertices) EXPECT_TRUE(inside_or_on(v, big));
  }
}

TEST(InflatePolygon, Errors) {
  EXPECT_THROW(inflate_polygon(unit_square(), -1.0), NegativeRadius);
  const Polygon bowtie{0, {{0, 0}, {1, 1}, {1, 0}, {0, 1}}};
  EXPECT_THROW(inflate_polygon(bowtie, 0.1), InvalidPolygon);
  const Polygon two{0, {{0, 0}, {1, 0}}};
  EXPECT_THROW(inflate_polygon(two, 0.1), InvalidPolygon);
}

TEST(Validation, RejectsDuplicatesAndNonFinite) {
  EXPECT_FALSE(is_valid_polygon({0, {{0, 0}, {1, 0}, {1, 0}, {0, 1}}}));
  EXPECT_FALSE(is_valid_polygon({0, {{0, 0}, {NAN, 0}, {0, 1}}}));
  EXPECT_TRUE(is_valid_polygon(unit_square()));
}

TEST(Normalized, MakesCounterClockwise) {
  const Polygon cw{0, {{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
  EXPECT_GT(signed_area2(normalized(cw).vertices), 0.0);
}

TEST(MergeOverlapping, Empty) { EXPECT_TRUE(merge_overlapping({}).empty()); }

TEST(MergeOverlapping, DisjointUnchanged) {
  const auto out = merge_overlapping({unit_square(0), box(1, 10, 10, 11, 11)});
  ASSERT_EQ(out.size(), 2u);
  expect_same_ring(out[0].vertices, unit_square().vertices);
  expect_same_ring(out[1].vertices, box(1, 10, 10, 11, 11).vertices);
}

TEST(MergeOverlapping, OverlappingSquaresBecomeHexagon) {
  const auto out = merge_overlapping({box(0, 0, 0, 2, 2), box(1, 1, 1, 3, 3)});
  ASSERT_EQ(out.size(), 1u);
  expect_same_ring(out[0].vertices, {{0, 0}, {2, 0}, {3, 1}, {3, 3}, {1, 3}, {0, 2}});
  std::vector<Point> all = box(0, 0, 0, 2, 2).vertices;
  for (const Point& p : box(1, 1, 1, 3, 3).vertices) all.push_back(p);
  expect_same_ring(out[0].vertices, ind::brute_hull(all));
}

TEST(MergeOverlapping, TouchingMergeAndChainReaction) {
  // a touches b at a corner; their hull then overlaps c, which touches neither.
  const auto out = merge_overlapping(
      {box(5, 0, 0, 1, 1), box(2, 1, 1, 2, 2), box(9, 1.4, 0.6, 1.6, 0.8)});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, 2);
}

TEST(MergeOverlapping, IdempotentConservativeAndDisjoint) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.0, 20.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Polygon> in;
    for (int k = 0; k < 8; ++k) in.push_back(random_convex(rng, k, {pos(rng), pos(rng)}, 2.5));
    const auto out = merge_overlapping(in);
    const auto again = merge_overlapping(out);
    ASSERT_EQ(out.size(), again.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
      EXPECT_EQ(out[k].id, again[k].id);
      expect_same_ring(out[k].vertices, again[k].vertices, 1e-12);
    }
    for (std::size_t a = 0; a < out.size(); ++a) {
      for (std::size_t b = a + 1; b < out.size(); ++b) {
        EXPECT_FALSE(polygons_touch(out[a], out[b]));
      }
    }
    std::uniform_real_distribution<double> probe(-3.0, 23.0);
    for (int k = 0; k < 1000; ++k) {
      const Point p{probe(rng), probe(rng)};
      const bool in_input = std::any_of(in.begin(), in.end(), [&](const Polygon& q) {
        return ind::deep_inside_convex(p, q.vertices, 0.0);
      });
      if (in_input) {
        EXPECT_NE(containing_obstacle(p, out), nullptr);
      }
    }
  }
}

TEST(ConvexHull, MatchesGiftWrapping) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> pts;
    for (int k = 0; k < 30; ++k) pts.push_back({u(rng), u(rng)});
    expect_same_ring(convex_hull(pts), ind::brute_hull(pts));
  }
}

TEST(SegmentIntersectsPolygon, SpecCases) {
  EXPECT_TRUE(segment_intersects_polygon({{-1, 0.5}, {2, 0.5}}, unit_square()));
  EXPECT_FALSE(segment_intersects_polygon({{-1, 2}, {2, 2}}, unit_square()));
  EXPECT_FALSE(segment_intersects_polygon({{-1, 1}, {2, 1}}, unit_square()));
}

TEST(SegmentIntersectsPolygon, GrazingAndEndpointContact) {
  EXPECT_FALSE(segment_intersects_polygon({{-1, 1}, {1, -1}}, unit_square()));
  EXPECT_TRUE(segment_intersects_polygon({{-1, 2}, {2, -1}}, unit_square()));
  EXPECT_FALSE(segment_intersects_polygon({{-1, -1}, {0, 0}}, unit_square()));
  EXPECT_FALSE(segment_intersects_polygon({{0, 0}, {1, 0}}, unit_square()));
  EXPECT_TRUE(segment_intersects_polygon({{0, 0}, {1, 1}}, unit_square()));
  EXPECT_TRUE(segment_intersects_polygon({{0.2, 0.2}, {0.3, 0.3}}, unit_square()));
}

TEST(SegmentIntersectsPolygon, AgreesWithSamplingAndIsSymmetric) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-6, 6);
  int hits = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const Polygon poly = random_convex(rng, 0, {0, 0}, 3.0);
    const Point a{u(rng), u(rng)};
    const Point b{u(rng), u(rng)};
    const bool got = segment_intersects_polygon({a, b}, poly);
    EXPECT_EQ(got, segment_intersects_polygon({b, a}, poly));
    if (ind::sampled_segment_enters(a, b, poly.vertices, 1e-6, 2048)) {
      EXPECT_TRUE(got) << to_string(a) << " -> " << to_string(b);
    }
    if (got) {
      ++hits;
      EXPECT_TRUE(ind::sampled_segment_enters(a, b, poly.vertices, 0.0, 1 << 16))
          << to_string(a) << " -> " << to_string(b);
    }
  }
  EXPECT_GT(hits, 100);
}

TEST(SegmentIntersectsPolygon, ConcavePocket) {
  const Polygon ell{0, {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
  // Lies in the notch only.
  EXPECT_FALSE(segment_intersects_polygon({{1.1, 1.9}, {1.9, 1.1}}, ell));
  // Touches the two arm tips without entering.
  EXPECT_FALSE(segment_intersects_polygon({{0.5, 2.5}, {2.5, 0.5}}, ell));
  // Cuts through both arms.
  EXPECT_TRUE(segment_intersects_polygon({{0.3, 2.3}, {2.3, 0.3}}, ell));
}

TEST(CheckIntersect, EmptySetAndOrdering) {
  ObstacleSet empty;
  EXPECT_TRUE(check_intersect({{0, 0}, {5, 5}}, empty).empty());

  ObstacleSet set;
  set.obstacles = {box(7, 6, -1, 7, 1), box(2, 2, -1, 3, 1), box(4, 4, 3, 5, 4)};
  const auto hit = check_intersect({{0, 0}, {10, 0}}, set);
  ASSERT_EQ(hit.size(), 2u);
  EXPECT_EQ(hit[0]->id, 2);
  EXPECT_EQ(hit[1]->id, 7);
  std::reverse(set.obstacles.begin(), set.obstacles.end());
  const auto again = check_intersect({{0, 0}, {10, 0}}, set);
  ASSERT_EQ(again.size(), 2u);
  EXPECT_EQ(again[0]->id, 2);
}

TEST(CheckIntersect, FreeSegmentsAmongRandomPolygons) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> pos(0.0, 30.0);
  std::vector<Polygon> raw;
  for (int k = 0; k < 10; ++k) raw.push_back(random_convex(rng, k, {pos(rng), pos(rng)}, 2.0));
  const ObstacleSet set = ObstacleSet::build(raw, 0.0);
  int free_found = 0;
  for (int trial = 0; trial < 2000 && free_found < 200; ++trial) {
    const Point a{pos(rng), pos(rng)};
    const Point b{pos(rng), pos(rng)};
    bool blocked = false;
    for (const Polygon& p : set.obstacles) {
      blocked = blocked || ind::sampled_segment_enters(a, b, p.vertices, -1e-3, 4096);
    }
    if (blocked) continue;
    ++free_found;
    EXPECT_TRUE(check_intersect({a, b}, set).empty());
  }
  EXPECT_GT(free_found, 50);
}

TEST(PointSegmentDistance, SpecCases) {
  const Segment line{{0, 0}, {2, 0}};
  EXPECT_DOUBLE_EQ(point_segment_distance({1, 1}, line), 1.0);
  EXPECT_DOUBLE_EQ(point_segment_distance({3, 0}, line), 1.0);
  EXPECT_DOUBLE_EQ(point_segment_distance({1, 0}, line), 0.0);
  EXPECT_DOUBLE_EQ(point_segment_distance({3, 4}, {{0, 0}, {0, 0}}), 5.0);
}

TEST(PointSegmentDistance, ZeroExactlyOnSegment) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 0; k < 500; ++k) {
    const Segment line{{u(rng), u(rng)}, {u(rng), u(rng)}};
    const double t = (u(rng) + 5) / 10;
    const Point on{line.a.x + t * (line.b.x - line.a.x), line.a.y + t * (line.b.y - line.a.y)};
    EXPECT_LE(point_segment_distance(on, line), 1e-9);
    const Point off{on.x - (line.b.y - line.a.y), on.y + (line.b.x - line.a.x)};
    EXPECT_GT(point_segment_distance(off, line), 1e-9);
  }
}

TEST(SignedSideDistance, Cases) {
  const Segment line{{0, 0}, {2, 0}};
  EXPECT_DOUBLE_EQ(signed_side_distance({1, 1}, line), 1.0);
  EXPECT_DOUBLE_EQ(signed_side_distance({1, -2}, line), -2.0);
  EXPECT_DOUBLE_EQ(signed_side_distance({5, 0}, line), 0.0);
  EXPECT_THROW(signed_side_distance({1, 1}, {{1, 1}, {1, 1}}), DegenerateSegment);
}

TEST(ConvexVertices, Cases) {
  EXPECT_EQ(convex_vertices(unit_square()).size(), 4u);
  EXPECT_EQ(convex_vertices({0, {{0, 0}, {3, 0}, {0, 3}}}).size(), 3u);
  const auto ell = convex_vertices({0, {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}});
  ASSERT_EQ(ell.size(), 5u);
  for (const Point& v : ell) EXPECT_FALSE(v == (Point{1, 1}));
}

TEST(ConvexDecomposition, PartsAreConvexAndCoverArea) {
  const Polygon ell{0, {{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 3}, {0, 3}}};
  const auto parts = convex_decomposition(ell);
  double area = 0.0;
  for (const Polygon& p : parts) {
    EXPECT_TRUE(is_convex(p));
    area += signed_area2(p.vertices) / 2.0;
  }
  EXPECT_NEAR(area, signed_area2(ell.vertices) / 2.0, 1e-9);
}

TEST(ObstacleSet, AllPlanningObstaclesConvex) {
  std::vector<Polygon> raw{{0, {{0, 0}, {4, 0}, {4, 1}, {1, 1}, {1, 3}, {0, 3}}},
                           box(1, 10, 10, 12, 11)};
  const ObstacleSet set = ObstacleSet::build(raw, 0.3);
  EXPECT_EQ(set.inflation_radius, 0.3);
  for (const Polygon& p : set.obstacles) {
    EXPECT_TRUE(is_convex(p));
    EXPECT_TRUE(is_valid_polygon(p));
  }
}

}  // namespace
}  // namespace rangetap
