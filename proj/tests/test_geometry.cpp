// Copyright 2026 The frechet-ve Authors
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
#include <random>

#include "oracles.hpp"

namespace fv = frechet_ve;
using fv::Curve;
using fv::Point;
using fv::Segment;

TEST(Dist, ThreeFourFive) { EXPECT_DOUBLE_EQ(fv::dist(Point{0, 0}, Point{3, 4}), 5.0); }

TEST(Dist, Identity) {
  Point p{1.5, -2.25, 7.0};
  EXPECT_EQ(fv::dist(p, p), 0.0);
}

TEST(Dist, UnitCubeDiagonal) {
  EXPECT_NEAR(fv::dist(Point{1, 1, 1}, Point{2, 2, 2}), std::sqrt(3.0), 1e-15);
}

TEST(Dist, DimensionMismatchThrows) {
  EXPECT_THROW(fv::dist(Point{0, 0}, Point{0, 0, 0}), fv::GeometryError);
}

TEST(PointTest, RejectsNonFinite) {
  EXPECT_THROW(Point({0.0, std::nan("")}), fv::GeometryError);
  EXPECT_THROW(Point({INFINITY, 0.0}), fv::GeometryError);
}

TEST(SegmentTest, MixedDimensionsThrow) {
  EXPECT_THROW(Segment(Point{0, 0}, Point{1, 1, 1}), fv::GeometryError);
}

TEST(NearestOnSegment, Orthogonal) {
  auto r = fv::nearest_on_segment(Point{1, 1}, Segment(Point{0, 0}, Point{2, 0}));
  EXPECT_DOUBLE_EQ(r.t, 0.5);
  EXPECT_DOUBLE_EQ(r.foot[0], 1.0);
  EXPECT_DOUBLE_EQ(r.foot[1], 0.0);
  EXPECT_DOUBLE_EQ(r.distance, 1.0);
}

TEST(NearestOnSegment, ClampedToEnd) {
  auto r = fv::nearest_on_segment(Point{3, 1}, Segment(Point{0, 0}, Point{2, 0}));
  EXPECT_EQ(r.t, 1.0);
  EXPECT_DOUBLE_EQ(r.foot[0], 2.0);
  EXPECT_NEAR(r.distance, std::sqrt(2.0), 1e-15);
}

TEST(NearestOnSegment, ClampedToStart) {
  auto r = fv::nearest_on_segment(Point{-1, 0}, Segment(Point{0, 0}, Point{2, 0}));
  EXPECT_EQ(r.t, 0.0);
  EXPECT_DOUBLE_EQ(r.foot[0], 0.0);
  EXPECT_DOUBLE_EQ(r.distance, 1.0);
}

TEST(NearestOnSegment, DegenerateSegment) {
  auto r = fv::nearest_on_segment(Point{3, 4}, Segment(Point{0, 0}, Point{0, 0}));
  EXPECT_EQ(r.t, 0.0);
  EXPECT_DOUBLE_EQ(r.distance, 5.0);
}

TEST(NearestOnSegment, BeatsSampledPoints) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    Point p{u(rng), u(rng), u(rng)};
    Segment s(Point{u(rng), u(rng), u(rng)}, Point{u(rng), u(rng), u(rng)});
    auto r = fv::nearest_on_segment(p, s);
    EXPECT_NEAR(fv::dist(p, r.foot), r.distance, 1e-12);
    for (int k = 0; k <= 100; ++k) {
      const double t = k / 100.0;
      Point z{s.start[0] + t * (s.end[0] - s.start[0]), s.start[1] + t * (s.end[1] - s.start[1]),
              s.start[2] + t * (s.end[2] - s.start[2])};
      EXPECT_LE(r.distance, fv::dist(p, z) + 1e-12);
    }
  }
}

TEST(Dist, TriangleInequality) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    EXPECT_LE(fv::dist(a, c), fv::dist(a, b) + fv::dist(b, c) + 1e-12);
  }
}

TEST(CurveTest, PrefixLengths) {
  auto c = fv::testing::curve_2d({{0, 0}, {3, 0}, {3, 4}});
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c.prefix(0), 0.0);
  EXPECT_DOUBLE_EQ(c.prefix(1), 3.0);
  EXPECT_DOUBLE_EQ(c.prefix(2), 7.0);
  EXPECT_DOUBLE_EQ(c.length(), 7.0);
  EXPECT_DOUBLE_EQ(c.edge_length(1), 4.0);
}

TEST(CurveTest, DropsConsecutiveDuplicates) {
  auto c = fv::testing::curve_2d({{0, 0}, {0, 0}, {1, 0}, {1, 0}, {1, 0}, {1, 1}});
  EXPECT_EQ(c.size(), 3u);
  EXPECT_EQ(c.dropped_duplicates(), 3u);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) EXPECT_GT(c.edge_length(i), 0.0);
}

TEST(CurveTest, SinglePointIsDegenerate) {
  auto c = fv::testing::curve_2d({{2, 2}, {2, 2}});
  EXPECT_TRUE(c.degenerate());
  EXPECT_EQ(c.size(), 2u);
  auto ok = fv::testing::curve_2d({{0, 0}, {1, 1}});
  EXPECT_THROW(fv::frechet_exact(c, ok), fv::DegenerateCurveError);
  EXPECT_THROW(fv::ve_frechet(ok, c), fv::DegenerateCurveError);
}

TEST(CurveTest, RaggedCoordinatesRejected) {
  EXPECT_THROW(Curve::from_coords({0, 0, 1}, 2), fv::GeometryError);
  EXPECT_THROW(Curve::from_coords({}, 2), fv::GeometryError);
  EXPECT_THROW(Curve::from_coords({0, 1}, 0), fv::GeometryError);
  EXPECT_THROW(Curve::from_points({Point{0, 0}, Point{1, 1, 1}}), fv::GeometryError);
}

TEST(PointAtArclength, PastTheBend) {
  auto c = fv::testing::curve_2d({{0, 0}, {3, 0}, {3, 4}});
  auto p = fv::point_at_arclength(c, 4.0);
  EXPECT_DOUBLE_EQ(p[0], 3.0);
  EXPECT_DOUBLE_EQ(p[1], 1.0);
  auto first = fv::point_at_arclength(c, 0.0);
  EXPECT_EQ(first[0], 0.0);
  EXPECT_EQ(first[1], 0.0);
  auto last = fv::point_at_arclength(c, c.length());
  EXPECT_EQ(last[0], 3.0);
  EXPECT_EQ(last[1], 4.0);
}

TEST(PointAtArclength, ClampsWithinTolerance) {
  auto c = fv::testing::curve_2d({{0, 0}, {3, 0}, {3, 4}});
  auto p = fv::point_at_arclength(c, 7.0 + 1e-10);
  EXPECT_EQ(p[1], 4.0);
  auto q = fv::point_at_arclength(c, -1e-10);
  EXPECT_EQ(q[0], 0.0);
  EXPECT_THROW(fv::point_at_arclength(c, 7.001), std::out_of_range);
  EXPECT_THROW(fv::point_at_arclength(c, -0.001), std::out_of_range);
}

TEST(PointAtArclength, HitsVerticesExactly) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto c = fv::testing::random_curve(rng, 2 + trial % 20, 1 + trial % 3);
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto p = c.point_at_arclength(c.prefix(i));
      auto v = c.vertex(i);
      for (std::size_t k = 0; k < c.dim(); ++k) EXPECT_EQ(p[k], v[k]);
    }
  }
}

TEST(CurveTest, RefinedKeepsGeometry) {
  std::mt19937_64 rng(9);
  auto c = fv::testing::random_curve(rng, 8);
  std::vector<double> xs{0.5, 1.25, c.prefix(3), c.length() * 0.7};
  auto r = c.refined(xs);
  EXPECT_GE(r.size(), c.size() + 3);
  EXPECT_NEAR(r.length(), c.length(), 1e-12 * c.length());
  for (int k = 0; k <= 100; ++k) {
    const double x = c.length() * k / 100.0;
    auto p = c.point_at_arclength(x);
    auto q = r.point_at_arclength(x);
    EXPECT_NEAR(fv::dist(p, q), 0.0, 1e-9);
  }
}
