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

// Bottleneck and shortest-path searches over implicitly defined directed
// graphs. Nodes are generated on demand through successors().

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace frechet_ve {

class NotReachableError : public std::runtime_error {
 public:
  NotReachableError() : std::runtime_error("target not reachable from start") {}
};

template <class N>
concept GraphNode = std::totally_ordered<N> && std::copyable<N> && requires(const N& n) {
  { std::hash<N>{}(n) } -> std::convertible_to<std::size_t>;
};

/// A directed graph given by its start node, a target predicate, and a
/// successor generator that appends (node, weight) pairs.
template <class G>
concept ImplicitGraph = requires(const G& g, const typename G::node_type& n,
                                 std::vector<std::pair<typename G::node_type, double>>& out) {
  requires GraphNode<typename G::node_type>;
  { g.start() } -> std::convertible_to<typename G::node_type>;
  { g.is_target(n) } -> std::convertible_to<bool>;
  g.successors(n, out);
};

/// A graph whose weights live on the nodes; successors() appends nodes only.
template <class G>
concept NodeWeightedGraph = requires(const G& g, const typename G::node_type& n,
                                     std::vector<typename G::node_type>& out) {
  requires GraphNode<typename G::node_type>;
  { g.start() } -> std::convertible_to<typename G::node_type>;
  { g.is_target(n) } -> std::convertible_to<bool>;
  { g.node_weight(n) } -> std::convertible_to<double>;
  g.successors(n, out);
};

template <class N>
struct RetractResult {
  std::vector<N> path;          // start .. target
  double bottleneck = 0.0;      // max edge weight along path
  std::size_t explored_count = 0;  // distinct nodes popped from the heap
};

namespace detail {

template <class N>
struct HeapEntry {
  double weight;
  N to;
  N from;
  bool has_from;
};

// Min-heap order on (weight, to, from): emulates distinct edge weights.
template <class N>
struct HeapGreater {
  bool operator()(const HeapEntry<N>& a, const HeapEntry<N>& b) const {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.to != b.to) return b.to < a.to;
    return b.from < a.from;
  }
};

template <class N>
std::vector<N> unwind(const std::unordered_map<N, std::optional<N>>& parent, const N& target) {
  std::vector<N> path{target};
  for (auto it = parent.find(target); it->second.has_value(); it = parent.find(*it->second)) {
    path.push_back(*it->second);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Retractable bottleneck path: a Prim-style search that always settles the
/// cheapest edge leaving the visited set. The tree path to every settled
/// node is retractable, so the returned path is bottleneck-optimal and each
/// half around its bottleneck edge is recursively optimal.
///
/// When `cutoff` is given the search gives up as soon as the cheapest
/// frontier edge exceeds it and returns nullopt.
template <ImplicitGraph G>
std::optional<RetractResult<typename G::node_type>> bounded_retractable_path(
    const G& g, double cutoff = std::numeric_limits<double>::infinity()) {
  using N = typename G::node_type;
  using Entry = detail::HeapEntry<N>;
  std::priority_queue<Entry, std::vector<Entry>, detail::HeapGreater<N>> heap;
  std::unordered_map<N, std::optional<N>> parent;
  std::unordered_map<N, double> in_weight;
  std::vector<std::pair<N, double>> succ;

  const N s = g.start();
  heap.push(Entry{-std::numeric_limits<double>::infinity(), s, s, false});
  RetractResult<N> result;
  while (!heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    if (parent.contains(e.to)) continue;
    if (e.weight > cutoff) return std::nullopt;
    parent.emplace(e.to, e.has_from ? std::optional<N>(e.from) : std::nullopt);
    in_weight.emplace(e.to, e.weight);
    ++result.explored_count;
    if (g.is_target(e.to)) {
      result.path = detail::unwind(parent, e.to);
      double b = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 1; k < result.path.size(); ++k) {
        b = std::max(b, in_weight.at(result.path[k]));
      }
      result.bottleneck = result.path.size() > 1 ? b : 0.0;
      return result;
    }
    succ.clear();
    g.successors(e.to, succ);
    for (const auto& [v, w] : succ) {
      if (!parent.contains(v)) heap.push(Entry{w, v, e.to, true});
    }
  }
  throw NotReachableError();
}

template <ImplicitGraph G>
RetractResult<typename G::node_type> retractable_path(const G& g) {
  return *bounded_retractable_path(g);
}

/// Presents a node-weighted graph as an edge-weighted one, with the weight of
/// u -> v being max(weight(u), weight(v)).
template <NodeWeightedGraph G>
class NodeWeightAdapter {
 public:
  using node_type = typename G::node_type;

  explicit NodeWeightAdapter(const G& g) : g_(g) {}

  node_type start() const { return g_.start(); }
  bool is_target(const node_type& n) const { return g_.is_target(n); }
  void successors(const node_type& n, std::vector<std::pair<node_type, double>>& out) const {
    nodes_.clear();
    g_.successors(n, nodes_);
    const double wn = g_.node_weight(n);
    for (const auto& v : nodes_) out.emplace_back(v, std::max(wn, g_.node_weight(v)));
  }

 private:
  const G& g_;
  mutable std::vector<node_type> nodes_;
};

template <NodeWeightedGraph G>
RetractResult<typename G::node_type> retractable_path_with_node_weights(const G& g) {
  NodeWeightAdapter<G> adapter(g);
  auto r = retractable_path(adapter);
  // A single-node path still pays for its own node.
  r.bottleneck = std::max(r.bottleneck, g.node_weight(r.path.front()));
  return r;
}

template <class N>
struct ShortestPathResult {
  std::vector<N> path;
  double cost = 0.0;
  std::size_t explored_count = 0;
};

/// Plain Dijkstra with additive (non-negative) weights, same graph contract
/// and tie order as the bottleneck search.
template <ImplicitGraph G>
ShortestPathResult<typename G::node_type> shortest_path(const G& g) {
  using N = typename G::node_type;
  using Entry = detail::HeapEntry<N>;
  std::priority_queue<Entry, std::vector<Entry>, detail::HeapGreater<N>> heap;
  std::unordered_map<N, std::optional<N>> parent;
  std::vector<std::pair<N, double>> succ;

  heap.push(Entry{0.0, g.start(), g.start(), false});
  ShortestPathResult<N> result;
  while (!heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    if (parent.contains(e.to)) continue;
    parent.emplace(e.to, e.has_from ? std::optional<N>(e.from) : std::nullopt);
    ++result.explored_count;
    if (g.is_target(e.to)) {
      result.path = detail::unwind(parent, e.to);
      result.cost = e.weight;
      return result;
    }
    succ.clear();
    g.successors(e.to, succ);
    for (const auto& [v, w] : succ) {
      if (w < 0.0) throw std::invalid_argument("negative edge weight in shortest_path");
      if (!parent.contains(v)) heap.push(Entry{e.weight + w, v, e.to, true});
    }
  }
  throw NotReachableError();
}

}  // namespace frechet_ve
