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

#include <chrono>
#include <random>

#include "oracles.hpp"

namespace fv = frechet_ve;
using fv::CertificateStatus;
using fv::Curve;

namespace {

double diameter(const Curve& c) {
  double d = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) d = std::max(d, fv::detail::distance(c.vertex(i), c.vertex(j)));
  }
  return d;
}

void expect_valid_certificate(const fv::DistanceCertificate& c) {
  EXPECT_LE(c.lower, c.upper);
  EXPECT_TRUE(fv::is_monotone(c.morphing));
  EXPECT_NEAR(fv::width(c.morphing.cell_aligned()), c.upper, 1e-12 * std::max(1.0, c.upper));
}

}  // namespace

TEST(FrechetExact, IdenticalCurves) {
  std::mt19937_64 rng(1);
  auto a = fv::testing::random_curve(rng, 15);
  auto c = fv::frechet_exact(a, a);
  EXPECT_EQ(c.status, CertificateStatus::Exact);
  EXPECT_EQ(c.rounds, 0u);
  EXPECT_NEAR(c.value(), 0.0, 1e-12);
}

TEST(FrechetExact, SingleSegmentsNeedNoRounds) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = fv::testing::random_curve(rng, 2), b = fv::testing::random_curve(rng, 2);
    auto c = fv::frechet_exact(a, b);
    EXPECT_EQ(c.status, CertificateStatus::Exact);
    EXPECT_EQ(c.rounds, 0u);
    const double ends = std::max(fv::dist(a.point(0), b.point(0)), fv::dist(a.point(1), b.point(1)));
    EXPECT_NEAR(c.value(), ends, 1e-12 * ends);
  }
}

TEST(FrechetExact, Translates) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = fv::testing::random_curve(rng, 3 + trial);
    auto b = fv::testing::translated(a, {0.0, 1.0});
    auto c = fv::frechet_exact(a, b);
    EXPECT_EQ(c.status, CertificateStatus::Exact);
    EXPECT_NEAR(c.value(), 1.0, 1e-9);
  }
}

TEST(FrechetExact, AgreesWithDenseDiscrete) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 25; ++trial) {
    auto a = fv::testing::random_curve(rng, 2 + trial % 7), b = fv::testing::random_curve(rng, 2 + trial % 5, 2);
    auto c = fv::frechet_exact(a, b);
    ASSERT_EQ(c.status, CertificateStatus::Exact);
    expect_valid_certificate(c);
    const double dense = fv::testing::dense_discrete_frechet(a, b, 200);
    EXPECT_LE(c.value(), dense + 1e-9);
    EXPECT_LE(dense - c.value(), 0.01 * dense);
  }
}

TEST(FrechetExact, BracketTightensEveryRound) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = fv::testing::random_curve(rng, 6 + trial % 6), b = fv::testing::random_curve(rng, 5 + trial % 7);
    double lo = -1.0, up = INFINITY;
    for (std::size_t r = 0; r < 6; ++r) {
      auto c = fv::frechet_exact(a, b, {r, 1e-10});
      EXPECT_GE(c.lower, lo);
      EXPECT_LE(c.upper, up);
      lo = c.lower;
      up = c.upper;
      if (c.status == CertificateStatus::Exact) break;
    }
  }
}

TEST(FrechetExact, ExactMeansBoundsMeet) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = fv::testing::random_curve(rng, 2 + trial % 10, 3), b = fv::testing::random_curve(rng, 2 + trial % 8, 3);
    auto c = fv::frechet_exact(a, b);
    ASSERT_EQ(c.status, CertificateStatus::Exact);
    EXPECT_LE(c.upper - c.lower, 1e-10 * c.upper);
    EXPECT_GE(c.lower, fv::ve_frechet(a, b).distance);
  }
}

TEST(FrechetExact, RoundCapReportsBracket) {
  auto [a, b] = [] {
    std::mt19937_64 rng(7);
    return fv::testing::zigzag_pair(rng, 6);
  }();
  auto c = fv::frechet_exact(a, b, {0, 1e-10});
  if (c.status != CertificateStatus::Exact) {
    EXPECT_EQ(c.status, CertificateStatus::IterationCapped);
    EXPECT_LT(c.lower, c.upper);
  }
  expect_valid_certificate(c);
}

TEST(FrechetExact, ZigzagFamilyConverges) {
  std::mt19937_64 rng(8);
  for (int inst = 0; inst < 10; ++inst) {
    auto [a, b] = fv::testing::zigzag_pair(rng, 3 + inst % 6);
    auto c = fv::frechet_exact(a, b);
    EXPECT_EQ(c.status, CertificateStatus::Exact);
    EXPECT_LE(c.rounds, 10u);
  }
}

TEST(BisectorRefine, MonotoneLeavesCurves) {
  std::mt19937_64 rng(9);
  auto a = fv::testing::random_curve(rng, 5), b = fv::testing::random_curve(rng, 6);
  fv::Morphing m(a, b, {{0, 0}, {a.length(), b.length()}});
  auto [ra, rb] = fv::bisector_refine(a, b, m);
  EXPECT_EQ(ra.size(), a.size());
  EXPECT_EQ(rb.size(), b.size());
}

TEST(BisectorRefine, PointIsEquidistant) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int hits = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> p{u(rng), u(rng)}, q{u(rng), u(rng)}, s{u(rng), u(rng)}, e{u(rng), u(rng)};
    auto t = fv::bisector_point_on_segment(p, q, s, e);
    if (!t) continue;
    ++hits;
    ASSERT_GT(*t, 0.0);
    ASSERT_LT(*t, 1.0);
    std::vector<double> x{s[0] + *t * (e[0] - s[0]), s[1] + *t * (e[1] - s[1])};
    EXPECT_NEAR(fv::detail::distance(x, p), fv::detail::distance(x, q), 1e-9);
  }
  EXPECT_GT(hits, 50);
}

TEST(BisectorRefine, NoCrossingNoPoint) {
  // bisector of (0,1) and (0,-1) is y = 0; the segment stays above it
  std::vector<double> p{0, 1}, q{0, -1}, s{-1, 2}, e{3, 0.5};
  EXPECT_FALSE(fv::bisector_point_on_segment(p, q, s, e).has_value());
  std::vector<double> s2{-1, 2}, e2{3, 2};
  EXPECT_FALSE(fv::bisector_point_on_segment(p, q, s2, e2).has_value());
}

TEST(BisectorRefine, InsertsOnBacktrackedEdge) {
  // b stays put near a's middle vertex while a's morphing retreats
  auto a = fv::testing::curve_2d({{0, 0}, {4, 0}});
  auto b = fv::testing::curve_2d({{0, 1}, {3, 1}, {1, 1.2}, {4, 1}});
  fv::Morphing m(a, b, {{0, 0}, {3, 3}, {1.5, 5.0}, {4, b.length()}});
  auto [ra, rb] = fv::bisector_refine(a, b, m);
  EXPECT_GT(ra.size(), a.size());
  EXPECT_NEAR(ra.length(), a.length(), 1e-12);
}

TEST(FrechetApprox, IdenticalIsZero) {
  std::mt19937_64 rng(11);
  auto a = fv::testing::random_walk(rng, 40);
  auto c = fv::frechet_approx(a, a, 2.0);
  EXPECT_EQ(c.status, CertificateStatus::Approx);
  EXPECT_NEAR(c.upper, 0.0, 1e-9);
}

TEST(FrechetApprox, FarTranslateCollapses) {
  std::mt19937_64 rng(12);
  auto a = fv::testing::random_walk(rng, 60, 2, 0.01);
  auto b = fv::testing::translated(a, {100.0, 0.0});
  auto c = fv::frechet_approx(a, b, 1.01);
  EXPECT_EQ(c.status, CertificateStatus::Approx);
  EXPECT_LE(c.lower, 100.0 + 1e-9);
  EXPECT_GE(c.upper, 100.0 - 1e-9);
  EXPECT_LE(c.upper, 1.01 * c.lower);
  EXPECT_LE(c.rounds, 1u);
}

TEST(FrechetApprox, BracketsExact) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = fv::testing::random_walk(rng, 10 + trial % 30);
    auto b = fv::testing::perturbed(rng, a, 0.3);
    const double ratio = 1.5 + 0.5 * (trial % 5);
    auto c = fv::frechet_approx(a, b, ratio);
    auto ex = fv::frechet_exact(a, b);
    ASSERT_EQ(ex.status, CertificateStatus::Exact);
    EXPECT_LE(c.lower, ex.value() * (1 + 1e-9));
    EXPECT_GE(c.upper, ex.value() * (1 - 1e-9));
    if (c.status == CertificateStatus::Approx) EXPECT_LE(c.upper, ratio * c.lower * (1 + 1e-12));
    expect_valid_certificate(c);
  }
}

TEST(FrechetApprox, RejectsBadRatio) {
  auto a = fv::testing::curve_1d({0, 1});
  EXPECT_THROW(fv::frechet_approx(a, a, 1.0), std::invalid_argument);
}

TEST(SlackTableTest, NonNegativeAndBounded) {
  std::mt19937_64 rng(14);
  auto a = fv::testing::random_curve(rng, 9), b = fv::testing::random_curve(rng, 7);
  auto ex = fv::frechet_exact(a, b);
  auto s = fv::slack_table(ex.morphing, ex.value());
  ASSERT_EQ(s.a.size(), a.size());
  ASSERT_EQ(s.b.size(), b.size());
  for (double v : s.a) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, ex.value());
  }
  for (double v : s.b) EXPECT_GE(v, 0.0);
  // the first vertex is matched to b's first vertex only
  EXPECT_NEAR(s.a[0], std::max(0.0, ex.value() - fv::dist(a.point(0), b.point(0))), 1e-12);
}

TEST(SensitiveSimplify, ZeroSlackKeepsAll) {
  std::mt19937_64 rng(15);
  auto c = fv::testing::random_curve(rng, 12);
  auto s = fv::sensitive_simplify(c, std::vector<double>(12, 0.0), 4.0);
  EXPECT_EQ(s.indices.size(), 12u);
}

TEST(SensitiveSimplify, HugeSlackKeepsEnds) {
  std::mt19937_64 rng(16);
  auto c = fv::testing::random_curve(rng, 12);
  const double tau = 4.0;
  auto s = fv::sensitive_simplify(c, std::vector<double>(12, tau * diameter(c)), tau);
  EXPECT_EQ(s.indices, (std::vector<std::size_t>{0, 11}));
}

TEST(SensitiveSimplify, RepresentativesWithinSlack) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto c = fv::testing::random_walk(rng, 5 + trial % 30);
    std::vector<double> slack(c.size());
    for (auto& v : slack) v = trial % 4 == 0 ? 0.0 : u(rng);
    const double tau = 1.0 + trial % 8;
    auto s = fv::sensitive_simplify(c, slack, tau);
    std::size_t rep = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const bool kept = std::find(s.indices.begin(), s.indices.end(), i) != s.indices.end();
      if (kept) {
        rep = i;
        continue;
      }
      EXPECT_GT(slack[i], 0.0);
      EXPECT_LE(fv::detail::distance(c.vertex(i), c.vertex(rep)), slack[i] / tau);
    }
  }
}

TEST(LowerBoundD, ZeroWidthsGiveExact) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = fv::testing::random_curve(rng, 2 + trial % 6), b = fv::testing::random_curve(rng, 2 + trial % 5);
    const double d = fv::frechet_lower_bound_D(a, b, fv::EdgeWidths(a.size() - 1, 0.0),
                                               fv::EdgeWidths(b.size() - 1, 0.0), 100);
    auto ex = fv::frechet_exact(a, b);
    EXPECT_NEAR(d, ex.value(), 1e-9 * ex.value());
  }
}

TEST(LowerBoundD, HugeWidthsClampAtZero) {
  std::mt19937_64 rng(19);
  auto a = fv::testing::random_curve(rng, 6), b = fv::testing::random_curve(rng, 5);
  EXPECT_EQ(fv::frechet_lower_bound_D(a, b, fv::EdgeWidths(5, 1e6), fv::EdgeWidths(4, 1e6)), 0.0);
}

TEST(LowerBoundD, BelowExactOfSources) {
  std::mt19937_64 rng(20);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = fv::testing::random_walk(rng, 10 + trial % 20);
    auto b = fv::testing::perturbed(rng, a, 0.4);
    auto sa = fv::delta_simplify(a, 0.8), sb = fv::delta_simplify(b, 0.8);
    const double d = fv::frechet_lower_bound_D(sa.curve, sb.curve, fv::edge_widths(a, sa), fv::edge_widths(b, sb));
    auto ex = fv::frechet_exact(a, b);
    EXPECT_LE(d, ex.upper + 1e-9 * ex.upper);
    EXPECT_GE(d, 0.0);
  }
}

TEST(ViaSimplification, MatchesExact) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = fv::testing::random_walk(rng, 5 + trial * 3);
    auto b = fv::testing::perturbed(rng, a, 0.2);
    auto c = fv::frechet_exact_via_simplification(a, b);
    auto ex = fv::frechet_exact(a, b);
    EXPECT_EQ(c.status, CertificateStatus::Exact);
    EXPECT_NEAR(c.value(), ex.value(), 1e-9 * ex.value());
    expect_valid_certificate(c);
  }
}

TEST(ViaSimplification, LargeNoisyPair) {
  std::mt19937_64 rng(22);
  auto a = fv::testing::random_walk(rng, 2000);
  auto b = fv::testing::perturbed(rng, a, 0.1);
  auto c = fv::frechet_exact_via_simplification(a, b);
  auto ex = fv::frechet_exact(a, b);
  EXPECT_EQ(c.status, CertificateStatus::Exact);
  EXPECT_NEAR(c.value(), ex.value(), 1e-9 * ex.value());
}

TEST(Decide, TrivialThresholds) {
  std::mt19937_64 rng(23);
  auto a = fv::testing::random_curve(rng, 8), b = fv::testing::random_curve(rng, 9);
  EXPECT_EQ(fv::decide(a, b, 2.0 * (diameter(a) + diameter(b)) + 100.0), fv::Verdict::Below);
  EXPECT_EQ(fv::decide(a, b, 0.0), fv::Verdict::Above);
  // identical curves come out at rounding level, not exactly 0
  EXPECT_EQ(fv::decide(a, a, 1e-9), fv::Verdict::Below);
}

TEST(Decide, TieCountsAsBelow) {
  auto a = fv::testing::curve_2d({{0, 0}, {4, 0}});
  auto b = fv::testing::curve_2d({{0, 1}, {4, 1}});
  EXPECT_EQ(fv::decide(a, b, 1.0), fv::Verdict::Below);
  EXPECT_EQ(fv::decide(a, b, 1.0 - 1e-6), fv::Verdict::Above);
}

TEST(Decide, AgreesWithExact) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = fv::testing::random_walk(rng, 4 + trial % 25);
    auto b = fv::testing::perturbed(rng, a, 0.1 + 0.05 * (trial % 8));
    auto ex = fv::frechet_exact(a, b);
    ASSERT_EQ(ex.status, CertificateStatus::Exact);
    const double t = ex.value() * u(rng);
    if (std::abs(t - ex.value()) <= 1e-9 * ex.value()) continue;
    auto pa = fv::comp_profile(a), pb = fv::comp_profile(b);
    const auto expect = ex.value() <= t ? fv::Verdict::Below : fv::Verdict::Above;
    EXPECT_EQ(fv::decide(a, b, t, &pa, &pb), expect) << "trial " << trial;
    EXPECT_EQ(fv::decide(a, b, t), expect);
  }
}
