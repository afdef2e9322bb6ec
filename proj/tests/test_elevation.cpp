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
using fv::CellElevation;
using fv::Point;
using fv::Segment;

namespace {

Segment random_segment(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> a(dim), b(dim);
  for (auto& v : a) v = u(rng);
  for (auto& v : b) v = u(rng);
  return Segment(Point(a), Point(b));
}

Point along(const Segment& s, double arclength) {
  const double t = arclength / s.length();
  std::vector<double> c(s.start.dim());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = s.start[k] + t * (s.end[k] - s.start[k]);
  return Point(c);
}

}  // namespace

TEST(CellElevationTest, ParallelUnitDistance) {
  CellElevation cell(Segment(Point{0, 0}, Point{4, 0}), Segment(Point{0, 1}, Point{4, 1}));
  for (double s : {0.0, 0.5, 1.7, 4.0}) EXPECT_NEAR(cell.elevation(s, s), 1.0, 1e-15);
}

TEST(CellElevationTest, OriginIsStartDistance) {
  CellElevation cell(Segment(Point{1, 2}, Point{4, 0}), Segment(Point{-1, 5}, Point{4, 1}));
  EXPECT_NEAR(cell.elevation(0, 0), fv::dist(Point{1, 2}, Point{-1, 5}), 1e-15);
}

TEST(CellElevationTest, OutOfRangeThrows) {
  CellElevation cell(Segment(Point{0, 0}, Point{1, 0}), Segment(Point{0, 1}, Point{1, 1}));
  EXPECT_THROW(cell.elevation(-0.1, 0.5), std::out_of_range);
  EXPECT_THROW(cell.elevation(0.5, 1.1), std::out_of_range);
  EXPECT_NO_THROW(cell.elevation(1.0 + 1e-12, 0.0));
}

TEST(CellElevationTest, MatchesDirectConstruction) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 1 + trial % 4;
    auto p = random_segment(rng, dim), q = random_segment(rng, dim);
    if (p.length() == 0.0 || q.length() == 0.0) continue;
    CellElevation cell(p, q);
    const double s = u(rng) * p.length(), t = u(rng) * q.length();
    const double direct = fv::dist(along(p, s), along(q, t));
    EXPECT_NEAR(cell.elevation(s, t), direct, 1e-12 * std::max(1.0, direct));
    EXPECT_NEAR(cell.squared(s, t), direct * direct, 1e-10 * std::max(1.0, direct * direct));
  }
}

TEST(CellElevationTest, GradientOrthogonalHandValue) {
  // E(s,t) = s^2 + t^2
  CellElevation cell(Segment(Point{0, 0}, Point{1, 0}), Segment(Point{0, 0}, Point{0, 1}));
  auto [gs, gt] = cell.gradient(1.0, 1.0);
  EXPECT_NEAR(gs, 2.0, 1e-15);
  EXPECT_NEAR(gt, 2.0, 1e-15);
  EXPECT_NEAR(cell.squared(1.0, 1.0), 2.0, 1e-15);
}

TEST(CellElevationTest, GradientVanishesAtMinimizer) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    CellElevation cell(random_segment(rng, 3), random_segment(rng, 3));
    auto st = cell.stationary_point();
    if (!st) continue;
    auto [gs, gt] = cell.gradient(st->first, st->second);
    EXPECT_NEAR(gs, 0.0, 1e-9);
    EXPECT_NEAR(gt, 0.0, 1e-9);
  }
}

TEST(CellElevationTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  for (int trial = 0; trial < 300; ++trial) {
    CellElevation cell(random_segment(rng, 2 + trial % 2), random_segment(rng, 2 + trial % 2));
    const double s = u(rng) * cell.length_p(), t = u(rng) * cell.length_q();
    auto [gs, gt] = cell.gradient(s, t);
    const double h = 1e-5;
    const double fs = fv::testing::central_difference([&](double x) { return cell.squared(x, t); }, s, h);
    const double ft = fv::testing::central_difference([&](double y) { return cell.squared(s, y); }, t, h);
    EXPECT_NEAR(gs, fs, 1e-6 * std::max(1.0, std::abs(fs)));
    EXPECT_NEAR(gt, ft, 1e-6 * std::max(1.0, std::abs(ft)));
  }
}

TEST(CellElevationTest, MinLinesSlopes) {
  CellElevation par(Segment(Point{0, 0}, Point{1, 0}), Segment(Point{0.3, 1}, Point{1.3, 1}));
  auto [h, v] = par.min_lines();
  EXPECT_NEAR(h.slope, 1.0, 1e-15);
  EXPECT_NEAR(h(0.5) - 0.5, h(0.0), 1e-15);
  CellElevation perp(Segment(Point{0, 0}, Point{1, 0}), Segment(Point{0, 0}, Point{0, 1}));
  auto [h2, v2] = perp.min_lines();
  EXPECT_EQ(h2.slope, 0.0);
  EXPECT_EQ(v2.slope, 0.0);
}

TEST(CellElevationTest, MinLinesMatchSampling) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    CellElevation cell(random_segment(rng, 2), random_segment(rng, 2));
    auto [h, v] = cell.min_lines();
    const double alpha = u(rng) * cell.length_q(), beta = u(rng) * cell.length_p();
    // sample a generous range around the cell
    const double span = 4.0 * (cell.length_p() + cell.length_q()) + 10.0;
    double best_s = 0.0, best_e = INFINITY, best_t = 0.0, best_f = INFINITY;
    for (int k = 0; k <= 10000; ++k) {
      const double x = -span + 2.0 * span * k / 10000.0;
      if (double e = cell.squared(x, alpha); e < best_e) {
        best_e = e;
        best_s = x;
      }
      if (double f = cell.squared(beta, x); f < best_f) {
        best_f = f;
        best_t = x;
      }
    }
    const double grid = 2.0 * span / 10000.0;
    EXPECT_NEAR(h(alpha), best_s, grid);
    EXPECT_NEAR(v(beta), best_t, grid);
  }
}

TEST(CellElevationTest, ConvexAlongChords) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    CellElevation cell(random_segment(rng, 2), random_segment(rng, 2));
    const double lp = cell.length_p(), lq = cell.length_q();
    const double s1 = u(rng) * lp, t1 = u(rng) * lq, s2 = u(rng) * lp, t2 = u(rng) * lq;
    const double mid = cell.elevation(0.5 * (s1 + s2), 0.5 * (t1 + t2));
    EXPECT_LE(mid, 0.5 * (cell.elevation(s1, t1) + cell.elevation(s2, t2)) + 1e-12);
    EXPECT_GE(cell.squared(s1, t1), -1e-12);
  }
}

TEST(CellElevationTest, MinElevationBelowSamples) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    CellElevation cell(random_segment(rng, 2), random_segment(rng, 2));
    const double lo = cell.min_elevation();
    double sampled = INFINITY;
    for (int a = 0; a <= 60; ++a) {
      for (int b = 0; b <= 60; ++b) {
        sampled = std::min(sampled, cell.elevation(cell.length_p() * a / 60.0, cell.length_q() * b / 60.0));
      }
    }
    EXPECT_LE(lo, sampled + 1e-12);
    EXPECT_GE(lo, sampled - 0.1 * (cell.length_p() + cell.length_q()));
  }
}

TEST(PortalTest, Interior) {
  auto p = fv::portal(Point{5, 3}, Segment(Point{0, 0}, Point{10, 0}));
  EXPECT_DOUBLE_EQ(p.t, 0.5);
  EXPECT_DOUBLE_EQ(p.elevation, 3.0);
}

TEST(PortalTest, OnEdge) {
  auto p = fv::portal(Point{2, 0}, Segment(Point{0, 0}, Point{10, 0}));
  EXPECT_EQ(p.elevation, 0.0);
  EXPECT_DOUBLE_EQ(p.t, 0.2);
}

TEST(PortalTest, Clamped) {
  auto p = fv::portal(Point{13, 4}, Segment(Point{0, 0}, Point{10, 0}));
  EXPECT_EQ(p.t, 1.0);
  EXPECT_DOUBLE_EQ(p.elevation, 5.0);
  auto q = fv::portal(Point{-3, -4}, Segment(Point{0, 0}, Point{10, 0}));
  EXPECT_EQ(q.t, 0.0);
  EXPECT_DOUBLE_EQ(q.elevation, 5.0);
}
