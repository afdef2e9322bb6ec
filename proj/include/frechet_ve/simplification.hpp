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
#include <stdexcept>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "morphing.hpp"

namespace frechet_ve {

/// Subsequence of a source curve's vertices (0-based, strictly increasing,
/// first and last included) and the curve through them.
struct SimplifiedCurve {
  std::vector<std::size_t> indices;
  Curve curve;
  std::size_t explored = 0;  // profile entries visited, for extract
};

/// Array A[k] of spine widths at the recursive midpoints of the source.
struct SimplificationProfile {
  std::vector<double> values;
  Curve source;
};

namespace detail {

// Builds the simplified curve for `idx`, dropping an index whose vertex
// coincides with the previously kept one.
inline SimplifiedCurve make_simplified(const Curve& c, const std::vector<std::size_t>& idx) {
  SimplifiedCurve out;
  const std::size_t d = c.dim();
  auto same = [&](std::size_t u, std::size_t v) {
    auto a = c.vertex(u), b = c.vertex(v);
    return std::equal(a.begin(), a.end(), b.begin());
  };
  for (std::size_t k : idx) {
    if (!out.indices.empty() && same(out.indices.back(), k)) {
      if (k + 1 == c.size() && out.indices.size() > 1) out.indices.back() = k;
      else if (k + 1 == c.size()) out.indices.push_back(k);
      continue;
    }
    out.indices.push_back(k);
  }
  std::vector<double> flat;
  flat.reserve(out.indices.size() * d);
  for (std::size_t k : out.indices) {
    auto v = c.vertex(k);
    flat.insert(flat.end(), v.begin(), v.end());
  }
  out.curve = Curve::from_coords(std::move(flat), d);
  return out;
}

// Projection parameters of c[i..k] onto the segment c_i c_k, made
// non-decreasing by running maxima. Returns the width of the induced
// morphing; `ts` receives the parameters when non-null.
inline double spine_scan(const Curve& c, std::size_t i, std::size_t k, std::vector<double>* ts) {
  auto a = c.vertex(i), b = c.vertex(k);
  double len2 = 0.0;
  for (std::size_t q = 0; q < c.dim(); ++q) len2 += (b[q] - a[q]) * (b[q] - a[q]);
  if (ts) ts->clear();
  double w = 0.0, run = 0.0;
  for (std::size_t r = i; r <= k; ++r) {
    auto p = c.vertex(r);
    if (len2 == 0.0) {
      w = std::max(w, distance(p, a));
      if (ts) ts->push_back(0.0);
      continue;
    }
    double dot = 0.0;
    for (std::size_t q = 0; q < c.dim(); ++q) dot += (p[q] - a[q]) * (b[q] - a[q]);
    run = std::max(run, std::clamp(dot / len2, 0.0, 1.0));
    if (r == k) run = 1.0;
    double acc = 0.0;
    for (std::size_t q = 0; q < c.dim(); ++q) {
      const double e = p[q] - (a[q] + run * (b[q] - a[q]));
      acc += e * e;
    }
    w = std::max(w, std::sqrt(acc));
    if (ts) ts->push_back(run);
  }
  return w;
}

}  // namespace detail

/// Width of the spine morphing of c[i..k] onto the segment c_i c_k; an upper
/// bound on their Frechet distance, within a factor 3 of it.
inline double spine_width(const Curve& c, std::size_t i, std::size_t k) {
  if (i > k || k >= c.size()) throw std::out_of_range("spine_width: bad index range");
  return detail::spine_scan(c, i, k, nullptr);
}

/// Monotone morphing from c onto the segment s: vertices are sent to their
/// nearest points on s, never moving backwards.
inline std::pair<Morphing, double> spine_morphing(const Curve& c, const Segment& s) {
  require_valid(c);
  detail::require_same_dim(c.dim(), s.start.dim());
  if (s.length() == 0.0) throw DegenerateCurveError("spine segment has zero length");
  const auto p0 = detail::project(c.vertex(0), s.start.coords(), s.end.coords());
  const auto p1 = detail::project(c.vertex(c.size() - 1), s.start.coords(), s.end.coords());
  if (p0.t > 1e-12 || p1.t < 1.0 - 1e-12) {
    throw std::invalid_argument("spine_morphing: curve endpoints do not project to the segment ends");
  }
  std::vector<double> flat(s.start.coords().begin(), s.start.coords().end());
  flat.insert(flat.end(), s.end.coords().begin(), s.end.coords().end());
  Curve seg = Curve::from_coords(std::move(flat), c.dim());
  const double len = seg.length();
  std::vector<ParamPoint> pts;
  double w = 0.0, run = 0.0;
  for (std::size_t r = 0; r < c.size(); ++r) {
    const auto pr = detail::project(c.vertex(r), s.start.coords(), s.end.coords());
    run = std::max(run, pr.t);
    if (r + 1 == c.size()) run = 1.0;
    pts.push_back({c.prefix(r), run == 1.0 ? len : run * len});
    w = std::max(w, elevation(c, pts.back().x, seg, pts.back().y));
  }
  return {Morphing(c, seg, std::move(pts)), w};
}

/// Greedy marking: keep the first vertex, then each vertex at distance at
/// least delta from the last kept one; the last vertex is always kept.
inline SimplifiedCurve delta_simplify(const Curve& c, double delta) {
  require_valid(c);
  if (!(delta > 0.0)) throw std::invalid_argument("delta_simplify: delta must be positive");
  std::vector<std::size_t> idx{0};
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    if (detail::distance(c.vertex(i), c.vertex(idx.back())) >= delta) idx.push_back(i);
  }
  idx.push_back(c.size() - 1);
  return detail::make_simplified(c, idx);
}

/// Morphing from c to a vertex subsequence of it: the spine morphings of
/// the spanned pieces, concatenated.
inline Morphing greedy_morphing(const Curve& c, const SimplifiedCurve& sub) {
  require_valid(c);
  require_valid(sub.curve);
  const auto& idx = sub.indices;
  if (idx.size() != sub.curve.size() || idx.front() != 0 || idx.back() + 1 != c.size()) {
    throw std::invalid_argument("greedy_morphing: not a vertex subsequence of the curve");
  }
  std::vector<ParamPoint> pts{{0.0, 0.0}};
  std::vector<double> ts;
  for (std::size_t r = 0; r + 1 < idx.size(); ++r) {
    detail::spine_scan(c, idx[r], idx[r + 1], &ts);
    const double y0 = sub.curve.prefix(r), y1 = sub.curve.prefix(r + 1);
    for (std::size_t q = 1; q < ts.size(); ++q) {
      const double y = ts[q] == 1.0 ? y1 : y0 + ts[q] * (y1 - y0);
      pts.push_back({c.prefix(idx[r] + q), y});
    }
  }
  return Morphing(c, sub.curve, std::move(pts));
}

/// Profile of spine widths at recursive midpoints; A[0] = A[n-1] = 0.
inline SimplificationProfile comp_profile(const Curve& c) {
  require_valid(c);
  SimplificationProfile p{std::vector<double>(c.size(), 0.0), c};
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, c.size() - 1}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    if (j - i < 2) continue;
    const std::size_t k = (i + j) / 2;
    p.values[k] = std::max(spine_width(c, i, k), spine_width(c, k, j));
    stack.emplace_back(i, k);
    stack.emplace_back(k, j);
  }
  return p;
}

/// Keeps every visited midpoint, descending below it only when its profile
/// value exceeds w.
inline SimplifiedCurve extract(const SimplificationProfile& profile, double w) {
  const Curve& c = profile.source;
  require_valid(c);
  if (profile.values.size() != c.size()) throw std::invalid_argument("extract: profile size mismatch");
  std::vector<std::size_t> idx{0, c.size() - 1};
  std::size_t visited = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, c.size() - 1}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    if (j - i < 2) continue;
    const std::size_t k = (i + j) / 2;
    ++visited;
    idx.push_back(k);
    if (profile.values[k] > w) {
      stack.emplace_back(i, k);
      stack.emplace_back(k, j);
    }
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  auto out = detail::make_simplified(c, idx);
  out.explored = visited;
  return out;
}

/// From each kept vertex, jumps to the furthest vertex found by exponential
/// then binary search whose spine width stays within delta.
inline SimplifiedCurve greedy_simplify(const Curve& c, double delta) {
  require_valid(c);
  if (!(delta >= 0.0)) throw std::invalid_argument("greedy_simplify: delta must be non-negative");
  const std::size_t last = c.size() - 1;
  std::vector<std::size_t> idx{0};
  std::size_t j = 0;
  while (j < last) {
    auto ok = [&](std::size_t k) { return spine_width(c, j, k) <= delta; };
    std::size_t lo = j + 1, hi = last + 1, step = 2;
    while (true) {
      const std::size_t k = std::min(j + step, last);
      if (k <= lo) break;
      if (!ok(k)) {
        hi = k;
        break;
      }
      lo = k;
      if (k == last) break;
      step *= 2;
    }
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (ok(mid)) lo = mid;
      else hi = mid;
    }
    idx.push_back(lo);
    j = lo;
  }
  return detail::make_simplified(c, idx);
}

/// Fast extraction at delta/10, then greedy simplification at 0.9 delta of
/// the extracted curve.
inline SimplifiedCurve combined_simplify(const SimplificationProfile& profile, double delta) {
  auto coarse = extract(profile, delta / 10.0);
  if (coarse.curve.degenerate()) return coarse;
  auto fine = greedy_simplify(coarse.curve, 0.9 * delta);
  std::vector<std::size_t> idx;
  idx.reserve(fine.indices.size());
  for (std::size_t k : fine.indices) idx.push_back(coarse.indices[k]);
  auto out = detail::make_simplified(profile.source, idx);
  out.explored = coarse.explored;
  return out;
}

}  // namespace frechet_ve
