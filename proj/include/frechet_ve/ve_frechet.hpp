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

// The VE graph: one node per grid edge of the free-space diagram, located at
// the portal (minimum elevation) of that grid edge, plus the two corners.
// Each cell links its incoming portals (bottom, left) to its outgoing
// portals (top, right). Portals on the grid edges touching a corner are
// replaced by that corner.

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "elevation.hpp"
#include "geometry.hpp"
#include "graph_search.hpp"
#include "morphing.hpp"

namespace frechet_ve {

/// Per-point subtraction applied to the elevation of one curve, keyed by the
/// arc-length breakpoints of a base curve: interior points of base edge k
/// get edge[k], the base vertex k gets vertex[k]. Refinements of the base
/// curve can be looked up directly since they share its parameterization.
class OffsetProfile {
 public:
  OffsetProfile() = default;
  OffsetProfile(Curve base, std::vector<double> edge, std::vector<double> vertex)
      : base_(std::move(base)), edge_(std::move(edge)), vertex_(std::move(vertex)) {
    if (edge_.size() != base_.edge_count() || vertex_.size() != base_.size()) {
      throw std::invalid_argument("offset profile does not match its base curve");
    }
  }

  /// Vertex offsets default to the larger of the adjacent edge offsets.
  static OffsetProfile from_edges(Curve base, std::vector<double> edge) {
    std::vector<double> vertex(base.size(), 0.0);
    for (std::size_t k = 0; k < edge.size(); ++k) {
      vertex[k] = std::max(vertex[k], edge[k]);
      vertex[k + 1] = std::max(vertex[k + 1], edge[k]);
    }
    return OffsetProfile(std::move(base), std::move(edge), std::move(vertex));
  }

  double at_point(double x) const {
    const std::size_t k = base_.edge_at(x);
    const double eps = 1e-12 * std::max(base_.length(), 1e-300);
    if (std::abs(x - base_.prefix(k)) <= eps) return vertex_[k];
    if (std::abs(x - base_.prefix(k + 1)) <= eps) return vertex_[k + 1];
    return edge_[k];
  }

  /// Offset of the open span (lo, hi), which must lie inside one base edge.
  double interior(double lo, double hi) const { return edge_[base_.edge_at(0.5 * (lo + hi))]; }

  const Curve& base() const { return base_; }
  const std::vector<double>& edge_offsets() const { return edge_; }
  const std::vector<double>& vertex_offsets() const { return vertex_; }

 private:
  Curve base_;
  std::vector<double> edge_;
  std::vector<double> vertex_;
};

struct VENode {
  enum class Kind { Start, End, Horizontal, Vertical };
  Kind kind = Kind::Start;
  // Horizontal: edge i of the first curve against vertex j of the second.
  // Vertical: vertex i of the first curve against edge j of the second.
  std::size_t i = 0;
  std::size_t j = 0;
  double t = 0.0;          // parameter along the edge, in [0,1]
  double elevation = 0.0;  // node value (elevation minus offsets, if any)
  ParamPoint location;
};

/// Implicit VE graph of two curves, keyed by 64-bit ids ordered
/// Start < portals (row-major) < End.
class VEGraph {
 public:
  using node_type = std::uint64_t;

  VEGraph(Curve a, Curve b, const OffsetProfile* offset_a = nullptr,
          const OffsetProfile* offset_b = nullptr)
      : a_(std::move(a)), b_(std::move(b)), oa_(offset_a), ob_(offset_b) {
    require_valid(a_);
    require_valid(b_);
    detail::require_same_dim(a_.dim(), b_.dim());
    n_ = a_.size();
    m_ = b_.size();
    end_ = 2 * static_cast<node_type>(n_) * m_ + 1;
  }

  const Curve& a() const { return a_; }
  const Curve& b() const { return b_; }
  std::size_t grid_edge_count() const { return (n_ - 1) * m_ + n_ * (m_ - 1); }

  node_type start() const { return 0; }
  node_type end() const { return end_; }
  bool is_target(node_type k) const { return k == end_; }

  node_type horizontal(std::size_t i, std::size_t j) const {
    if ((i == 0 && j == 0)) return 0;
    if (i == n_ - 2 && j == m_ - 1) return end_;
    return 1 + 2 * (static_cast<node_type>(i) * m_ + j);
  }
  node_type vertical(std::size_t i, std::size_t j) const {
    if (i == 0 && j == 0) return 0;
    if (i == n_ - 1 && j == m_ - 2) return end_;
    return 2 + 2 * (static_cast<node_type>(i) * m_ + j);
  }

  /// Outgoing portals of the cell(s) where `k` is an incoming portal.
  void successor_nodes(node_type k, std::vector<node_type>& out) const {
    if (k == end_) return;
    std::size_t i = 0, j = 0;
    if (k != 0) {
      const node_type idx = (k - 1) / 2;
      i = static_cast<std::size_t>(idx / m_);
      j = static_cast<std::size_t>(idx % m_);
      const bool horiz = (k % 2) == 1;
      // Portals on the top row / right column are not incoming anywhere.
      if (horiz && j + 1 >= m_) return;
      if (!horiz && i + 1 >= n_) return;
    }
    const node_type top = horizontal(i, j + 1);
    const node_type right = vertical(i + 1, j);
    out.push_back(top);
    if (right != top) out.push_back(right);
  }

  void successors(node_type k, std::vector<std::pair<node_type, double>>& out) const {
    scratch_.clear();
    successor_nodes(k, scratch_);
    const double wk = value(k);
    for (node_type v : scratch_) out.emplace_back(v, std::max(wk, value(v)));
  }

  double value(node_type k) const { return node(k).elevation; }

  VENode node(node_type k) const {
    VENode v;
    if (k == 0) {
      v.kind = VENode::Kind::Start;
      v.location = {0.0, 0.0};
      v.elevation = detail::distance(a_.vertex(0), b_.vertex(0)) - off_a(0.0) - off_b(0.0);
      return v;
    }
    if (k == end_) {
      v.kind = VENode::Kind::End;
      v.i = n_ - 1;
      v.j = m_ - 1;
      v.t = 1.0;
      v.location = {a_.length(), b_.length()};
      v.elevation = detail::distance(a_.vertex(n_ - 1), b_.vertex(m_ - 1)) -
                    off_a(a_.length()) - off_b(b_.length());
      return v;
    }
    const node_type idx = (k - 1) / 2;
    v.i = static_cast<std::size_t>(idx / m_);
    v.j = static_cast<std::size_t>(idx % m_);
    if (k % 2 == 1) {
      v.kind = VENode::Kind::Horizontal;
      const auto pr = detail::project(b_.vertex(v.j), a_.vertex(v.i), a_.vertex(v.i + 1));
      const double x0 = a_.prefix(v.i), x1 = a_.prefix(v.i + 1), y = b_.prefix(v.j);
      v.t = pr.t;
      v.location = {x0 + pr.t * (x1 - x0), y};
      v.elevation = pr.distance;
      if (pr.t == 1.0) v.location.x = x1;
      if (oa_ || ob_) {
        const double oy = off_b(y);
        v.elevation = pr.distance - off_a_open(x0, x1) - oy;
        relax(v, 0.0, detail::distance(a_.vertex(v.i), b_.vertex(v.j)) - off_a(x0) - oy, {x0, y});
        relax(v, 1.0, detail::distance(a_.vertex(v.i + 1), b_.vertex(v.j)) - off_a(x1) - oy,
              {x1, y});
      }
    } else {
      v.kind = VENode::Kind::Vertical;
      const auto pr = detail::project(a_.vertex(v.i), b_.vertex(v.j), b_.vertex(v.j + 1));
      const double y0 = b_.prefix(v.j), y1 = b_.prefix(v.j + 1), x = a_.prefix(v.i);
      v.t = pr.t;
      v.location = {x, y0 + pr.t * (y1 - y0)};
      v.elevation = pr.distance;
      if (pr.t == 1.0) v.location.y = y1;
      if (oa_ || ob_) {
        const double ox = off_a(x);
        v.elevation = pr.distance - off_b_open(y0, y1) - ox;
        relax(v, 0.0, detail::distance(a_.vertex(v.i), b_.vertex(v.j)) - off_b(y0) - ox, {x, y0});
        relax(v, 1.0, detail::distance(a_.vertex(v.i), b_.vertex(v.j + 1)) - off_b(y1) - ox,
              {x, y1});
      }
    }
    return v;
  }

 private:
  static void relax(VENode& v, double t, double value, ParamPoint loc) {
    if (value < v.elevation) {
      v.elevation = value;
      v.t = t;
      v.location = loc;
    }
  }
  double off_a(double x) const { return oa_ ? oa_->at_point(x) : 0.0; }
  double off_b(double y) const { return ob_ ? ob_->at_point(y) : 0.0; }
  double off_a_open(double lo, double hi) const { return oa_ ? oa_->interior(lo, hi) : 0.0; }
  double off_b_open(double lo, double hi) const { return ob_ ? ob_->interior(lo, hi) : 0.0; }

  Curve a_, b_;
  const OffsetProfile* oa_;
  const OffsetProfile* ob_;
  std::size_t n_ = 0, m_ = 0;
  node_type end_ = 0;
  mutable std::vector<node_type> scratch_;
};

/// Successors of `node` in the VE graph of (a, b), with edge weights.
inline std::vector<std::pair<VENode, double>> ve_successors(const VENode& node, const Curve& a,
                                                            const Curve& b) {
  VEGraph g(a, b);
  VEGraph::node_type k = 0;
  switch (node.kind) {
    case VENode::Kind::Start: k = g.start(); break;
    case VENode::Kind::End: k = g.end(); break;
    case VENode::Kind::Horizontal: k = g.horizontal(node.i, node.j); break;
    case VENode::Kind::Vertical: k = g.vertical(node.i, node.j); break;
  }
  std::vector<std::pair<VEGraph::node_type, double>> raw;
  g.successors(k, raw);
  std::vector<std::pair<VENode, double>> out;
  for (const auto& [v, w] : raw) out.emplace_back(g.node(v), w);
  return out;
}

struct VEResult {
  double distance = 0.0;
  Morphing morphing;
  std::size_t explored = 0;
  std::vector<VENode> path;
};

namespace detail {

inline VEResult assemble_ve(const VEGraph& g, const RetractResult<VEGraph::node_type>& r) {
  VEResult out;
  out.distance = r.bottleneck;
  out.explored = r.explored_count;
  std::vector<ParamPoint> pts;
  pts.reserve(r.path.size());
  for (auto k : r.path) {
    out.path.push_back(g.node(k));
    pts.push_back(out.path.back().location);
  }
  if (r.path.size() == 1) pts.push_back(pts.front());
  out.morphing = Morphing(g.a(), g.b(), std::move(pts));
  return out;
}

}  // namespace detail

/// Retractable VE-Frechet distance and morphing. The distance is the
/// bottleneck of the Start -> End path; it never exceeds the Frechet
/// distance, and the morphing crosses every vertex line exactly once.
inline VEResult ve_frechet(const Curve& a, const Curve& b, const OffsetProfile* offset_a = nullptr,
                           const OffsetProfile* offset_b = nullptr) {
  VEGraph g(a, b, offset_a, offset_b);
  return detail::assemble_ve(g, retractable_path(g));
}

/// As ve_frechet, but stops with nullopt once every frontier edge is above
/// `cutoff` (the VE distance then exceeds it).
inline std::optional<VEResult> ve_frechet_bounded(const Curve& a, const Curve& b, double cutoff) {
  VEGraph g(a, b);
  auto r = bounded_retractable_path(g, cutoff);
  if (!r) return std::nullopt;
  return detail::assemble_ve(g, *r);
}

}  // namespace frechet_ve
