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

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "elevation.hpp"
#include "geometry.hpp"
#include "graph_search.hpp"
#include "morphing.hpp"
#include "ve_frechet.hpp"

namespace frechet_ve {

/// sqrt(a x^2 + b x + c), a >= 0.
struct QuadraticUnderRoot {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double operator()(double x) const { return std::sqrt(std::max(0.0, (a * x + b) * x + c)); }
};

namespace detail {

inline double check_radicand(const QuadraticUnderRoot& q, double x, double scale) {
  const double v = (q.a * x + q.b) * x + q.c;
  if (v < -1e-9 * scale) throw std::domain_error("negative radicand in integral_sqrt_quadratic");
  return std::max(v, 0.0);
}

}  // namespace detail

/// Integral of sqrt(a x^2 + b x + c) over [x0, x1].
inline double integral_sqrt_quadratic(const QuadraticUnderRoot& q, double x0, double x1) {
  if (x1 < x0) throw std::invalid_argument("integral_sqrt_quadratic: x1 < x0");
  if (q.a < 0.0) throw std::invalid_argument("integral_sqrt_quadratic: a must be non-negative");
  const double xs = std::max({std::abs(x0), std::abs(x1), 1.0});
  const double scale = std::max({q.a * xs * xs, std::abs(q.b) * xs, std::abs(q.c), 1e-300});
  const double r0 = detail::check_radicand(q, x0, scale);
  const double r1 = detail::check_radicand(q, x1, scale);
  if (x1 == x0) return 0.0;

  if (q.a * xs * xs <= 1e-12 * scale) {
    // Linear radicand.
    if (std::abs(q.b) * xs <= 1e-12 * scale) return std::sqrt(std::max(q.c, 0.0)) * (x1 - x0);
    return 2.0 / (3.0 * q.b) * (r1 * std::sqrt(r1) - r0 * std::sqrt(r0));
  }
  const double disc = 4.0 * q.a * q.c - q.b * q.b;
  if (std::abs(disc) <= 1e-12 * std::max(q.b * q.b, 4.0 * q.a * std::abs(q.c))) {
    // Perfect square: |sqrt(a) x + b / (2 sqrt(a))|.
    const double sa = std::sqrt(q.a);
    const double root = -q.b / (2.0 * q.a);
    auto prim = [&](double x) { return 0.5 * sa * (x - root) * std::abs(x - root); };
    return prim(x1) - prim(x0);
  }
  if (disc < 0.0) {
    // Real roots: the integrand vanishes between them, the interval cannot
    // straddle that gap, so integrate by the substitution-free form.
    const double sa = std::sqrt(q.a);
    auto prim = [&](double x, double r) {
      const double y = 2.0 * q.a * x + q.b;
      return (y * std::sqrt(r)) / (4.0 * q.a) +
             disc / (8.0 * q.a * sa) * std::log(std::abs(y + 2.0 * sa * std::sqrt(r)));
    };
    const double mid = 0.5 * (x0 + x1);
    const double ym = 2.0 * q.a * mid + q.b;
    if (ym < 0.0) {
      // Mirror to the right branch so the log argument stays away from 0.
      QuadraticUnderRoot m{q.a, -q.b, q.c};
      return integral_sqrt_quadratic(m, -x1, -x0);
    }
    return prim(x1, r1) - prim(x0, r0);
  }
  const double sa = std::sqrt(q.a);
  const double sd = std::sqrt(disc);
  auto prim = [&](double x, double r) {
    const double y = 2.0 * q.a * x + q.b;
    return y * std::sqrt(r) / (4.0 * q.a) + disc / (8.0 * q.a * sa) * std::asinh(y / sd);
  };
  return prim(x1, r1) - prim(x0, r0);
}

/// Cost of the constant-speed linear morphing between the directed segments
/// tau (on the first curve) and tau2 (on the second): the leash length
/// integrated along both.
inline double edge_price(const Segment& tau, const Segment& tau2) {
  detail::require_same_dim(tau.start.dim(), tau2.start.dim());
  const std::size_t d = tau.start.dim();
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double u = tau.start[k] - tau2.start[k];
    const double delta = (tau.end[k] - tau.start[k]) - (tau2.end[k] - tau2.start[k]);
    alpha += delta * delta;
    beta += 2.0 * u * delta;
    gamma += u * u;
  }
  const double len = tau.length() + tau2.length();
  if (len == 0.0) return 0.0;
  return len * integral_sqrt_quadratic({alpha, beta, gamma}, 0.0, 1.0);
}

namespace detail {

inline double segment_price(const Curve& a, const Curve& b, const ParamPoint& p,
                            const ParamPoint& q) {
  return edge_price(Segment(a.point_at_arclength(p.x), a.point_at_arclength(q.x)),
                    Segment(b.point_at_arclength(p.y), b.point_at_arclength(q.y)));
}

// VE graph with additive prices of the straight moves between node
// locations.
class SweepGraph {
 public:
  using node_type = VEGraph::node_type;
  explicit SweepGraph(const VEGraph& g) : g_(g) {}
  node_type start() const { return g_.start(); }
  bool is_target(node_type k) const { return g_.is_target(k); }
  void successors(node_type k, std::vector<std::pair<node_type, double>>& out) const {
    nodes_.clear();
    g_.successor_nodes(k, nodes_);
    const ParamPoint from = g_.node(k).location;
    for (node_type v : nodes_) {
      out.emplace_back(v, segment_price(g_.a(), g_.b(), from, g_.node(v).location));
    }
  }

 private:
  const VEGraph& g_;
  mutable std::vector<node_type> nodes_;
};

}  // namespace detail

/// Additive cost of a cell-aligned morphing: the sum of its segment prices.
inline double sweep_cost(const Morphing& m) {
  const auto cm = m.is_cell_aligned() ? m : m.cell_aligned();
  double total = 0.0;
  const auto& p = cm.points();
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    total += detail::segment_price(cm.a(), cm.b(), p[k], p[k + 1]);
  }
  return total;
}

struct SweepResult {
  double value = 0.0;
  Morphing morphing;
  std::size_t refinement_rounds = 0;
  bool capped = false;
};

/// Cheapest VE-graph path under segment prices, refined at backtracks until
/// monotone; the value is the cost of the final monotone morphing.
inline SweepResult sweep_distance(const Curve& a, const Curve& b, std::size_t max_rounds = 10) {
  require_valid(a);
  require_valid(b);
  detail::require_same_dim(a.dim(), b.dim());
  Curve ra = a, rb = b;
  SweepResult out;
  for (std::size_t round = 0;; ++round) {
    VEGraph g(ra, rb);
    detail::SweepGraph sg(g);
    const auto sp = shortest_path(sg);
    std::vector<ParamPoint> pts;
    for (auto k : sp.path) pts.push_back(g.node(k).location);
    if (pts.size() == 1) pts.push_back(pts.front());
    Morphing m(ra, rb, std::move(pts));
    out.refinement_rounds = round;
    const bool mono = is_monotone(m);
    if (mono || round >= max_rounds) {
      out.capped = !mono;
      out.morphing = monotonize(m).cell_aligned().with_curves(a, b);
      out.value = sweep_cost(out.morphing);
      return out;
    }
    auto [xa, xb] = backtrack_midpoints(m);
    ra = ra.refined(xa);
    rb = rb.refined(xb);
  }
}

/// Each edge split at its midpoint.
inline Curve split(const Curve& c) {
  require_valid(c);
  std::vector<double> mids;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) mids.push_back(0.5 * (c.prefix(i) + c.prefix(i + 1)));
  return c.refined(std::move(mids));
}

/// Lower bound on the sweep distance: cheapest monotone grid path where
/// each grid edge costs its length times the smaller minimum elevation of
/// its two adjacent cells.
inline double cdtw_lower_bound(const Curve& a, const Curve& b) {
  require_valid(a);
  require_valid(b);
  detail::require_same_dim(a.dim(), b.dim());
  const std::size_t n = a.size(), m = b.size();
  std::vector<double> cell((n - 1) * (m - 1));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j + 1 < m; ++j) {
      cell[i * (m - 1) + j] = CellElevation::of_cell(a, i, b, j).min_elevation();
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  auto cmin = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    if (i < 0 || j < 0 || i + 1 >= static_cast<std::ptrdiff_t>(n) ||
        j + 1 >= static_cast<std::ptrdiff_t>(m)) {
      return inf;
    }
    return cell[i * (m - 1) + j];
  };
  std::vector<double> dp(n * m, inf);
  dp[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto si = static_cast<std::ptrdiff_t>(i), sj = static_cast<std::ptrdiff_t>(j);
      double& here = dp[i * m + j];
      if (i > 0) {
        // Edge (i-1, j) -> (i, j) runs along the first curve's edge i-1.
        const double w = std::min(cmin(si - 1, sj - 1), cmin(si - 1, sj)) * a.edge_length(i - 1);
        here = std::min(here, dp[(i - 1) * m + j] + w);
      }
      if (j > 0) {
        const double w = std::min(cmin(si - 1, sj - 1), cmin(si, sj - 1)) * b.edge_length(j - 1);
        here = std::min(here, dp[i * m + j - 1] + w);
      }
    }
  }
  return dp[n * m - 1];
}

}  // namespace frechet_ve
