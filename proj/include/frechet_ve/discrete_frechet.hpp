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

#include <cstdint>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "graph_search.hpp"

namespace frechet_ve {

/// Monotone grid path over index pairs, 0-based: (0,0) .. (n-1,m-1).
struct DiscreteMorphing {
  std::vector<std::pair<std::size_t, std::size_t>> steps;
  double width = 0.0;
};

struct DiscreteResult {
  double distance = 0.0;
  DiscreteMorphing morphing;
  std::size_t explored = 0;
};

namespace detail {

inline void require_same_dims(const std::vector<Point>& p, const std::vector<Point>& q) {
  if (p.empty() || q.empty()) throw GeometryError("discrete Frechet needs non-empty sequences");
  const std::size_t d = p.front().dim();
  for (const auto& x : p) require_same_dim(d, x.dim());
  for (const auto& x : q) require_same_dim(d, x.dim());
}

// Grid graph over (i, j); node id is i * m + j so the tie order is row-major.
class DiscreteGridGraph {
 public:
  using node_type = std::uint64_t;

  DiscreteGridGraph(const std::vector<Point>& p, const std::vector<Point>& q)
      : p_(p), q_(q), n_(p.size()), m_(q.size()) {}

  node_type start() const { return 0; }
  bool is_target(node_type v) const { return v == n_ * m_ - 1; }
  double node_weight(node_type v) const {
    return distance(p_[v / m_].coords(), q_[v % m_].coords());
  }
  void successors(node_type v, std::vector<node_type>& out) const {
    const std::size_t i = v / m_, j = v % m_;
    if (i + 1 < n_) out.push_back(v + m_);
    if (j + 1 < m_) out.push_back(v + 1);
  }
  std::pair<std::size_t, std::size_t> decode(node_type v) const { return {v / m_, v % m_}; }

 private:
  const std::vector<Point>& p_;
  const std::vector<Point>& q_;
  std::size_t n_, m_;
};

}  // namespace detail

/// Classic O(nm) dynamic program. Diagonal moves are not allowed: one of the
/// two sequences advances per step.
inline DiscreteResult discrete_frechet_dp(const std::vector<Point>& p, const std::vector<Point>& q) {
  detail::require_same_dims(p, q);
  const std::size_t n = p.size(), m = q.size();
  std::vector<double> dp(n * m);
  auto h = [&](std::size_t i, std::size_t j) { return detail::distance(p[i].coords(), q[j].coords()); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else if (i == 0) {
        best = dp[j - 1];
      } else if (j == 0) {
        best = dp[(i - 1) * m];
      } else {
        best = std::min(dp[(i - 1) * m + j], dp[i * m + j - 1]);
      }
      dp[i * m + j] = std::max(best, h(i, j));
    }
  }
  DiscreteResult r;
  r.distance = dp[n * m - 1];
  r.explored = n * m;
  std::size_t i = n - 1, j = m - 1;
  r.morphing.steps.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else if (dp[(i - 1) * m + j] <= dp[i * m + j - 1]) {
      --i;
    } else {
      --j;
    }
    r.morphing.steps.emplace_back(i, j);
  }
  std::reverse(r.morphing.steps.begin(), r.morphing.steps.end());
  r.morphing.width = r.distance;
  return r;
}

/// Retractable discrete Frechet morphing via the bottleneck search on the
/// grid graph. Only the configurations popped before reaching (n-1, m-1) are
/// touched, which is far below n*m when the sequences are close.
inline DiscreteResult retractable_discrete_frechet(const std::vector<Point>& p,
                                                   const std::vector<Point>& q) {
  detail::require_same_dims(p, q);
  detail::DiscreteGridGraph g(p, q);
  const auto res = retractable_path_with_node_weights(g);
  DiscreteResult r;
  r.distance = res.bottleneck;
  r.explored = res.explored_count;
  for (auto v : res.path) r.morphing.steps.push_back(g.decode(v));
  r.morphing.width = res.bottleneck;
  return r;
}

inline double discrete_width(const DiscreteMorphing& m, const std::vector<Point>& p,
                             const std::vector<Point>& q) {
  double w = 0.0;
  for (auto [i, j] : m.steps) w = std::max(w, dist(p[i], q[j]));
  return w;
}

}  // namespace frechet_ve
