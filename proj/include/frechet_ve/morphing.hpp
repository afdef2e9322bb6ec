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

#include "geometry.hpp"

namespace frechet_ve {

/// A point of the free-space rectangle: arc-length x on the first curve and
/// y on the second.
struct ParamPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const ParamPoint&, const ParamPoint&) = default;
};

/// Polygonal path in the free-space diagram of two curves, from (0,0) to
/// (|a|, |b|). Matched point pairs are derived on demand.
class Morphing {
 public:
  Morphing() = default;

  Morphing(Curve a, Curve b, std::vector<ParamPoint> pts)
      : a_(std::move(a)), b_(std::move(b)), pts_(std::move(pts)) {
    if (pts_.size() < 2) throw std::invalid_argument("morphing needs at least two points");
    const double la = a_.length(), lb = b_.length();
    const double ta = a_.tolerance(), tb = b_.tolerance();
    auto near = [](double v, double target, double tol) { return std::abs(v - target) <= tol; };
    if (!near(pts_.front().x, 0.0, ta) || !near(pts_.front().y, 0.0, tb)) {
      throw std::invalid_argument("morphing must start at (0,0)");
    }
    if (!near(pts_.back().x, la, ta) || !near(pts_.back().y, lb, tb)) {
      throw std::invalid_argument("morphing must end at (|a|,|b|)");
    }
    pts_.front() = {0.0, 0.0};
    pts_.back() = {la, lb};
    const double ja = 1e-12 * std::max(la, 1e-300), jb = 1e-12 * std::max(lb, 1e-300);
    for (std::size_t k = 0; k < pts_.size(); ++k) {
      auto& p = pts_[k];
      if (p.x < -ta || p.x > la + ta || p.y < -tb || p.y > lb + tb) {
        throw std::invalid_argument("morphing point outside the free-space rectangle");
      }
      p.x = std::clamp(p.x, 0.0, la);
      p.y = std::clamp(p.y, 0.0, lb);
      if (k > 0) {
        if (std::abs(p.x - pts_[k - 1].x) <= ja) p.x = pts_[k - 1].x;
        if (std::abs(p.y - pts_[k - 1].y) <= jb) p.y = pts_[k - 1].y;
      }
    }
    pts_.back() = {la, lb};
  }

  const Curve& a() const { return a_; }
  const Curve& b() const { return b_; }
  const std::vector<ParamPoint>& points() const { return pts_; }
  std::size_t size() const { return pts_.size(); }

  double elevation_at(const ParamPoint& p) const { return elevation(a_, p.x, b_, p.y); }

  /// The same path read as a morphing from b to a.
  Morphing reversed() const {
    std::vector<ParamPoint> r;
    r.reserve(pts_.size());
    for (const auto& p : pts_) r.push_back({p.y, p.x});
    return Morphing(b_, a_, std::move(r));
  }

  /// Reinterprets the path over curves with identical arc-length domains,
  /// e.g. refinements of the current ones.
  Morphing with_curves(Curve a, Curve b) const { return Morphing(std::move(a), std::move(b), pts_); }

  /// True when every segment stays inside one closed grid cell.
  bool is_cell_aligned() const {
    for (std::size_t k = 0; k + 1 < pts_.size(); ++k) {
      if (!crossings(pts_[k], pts_[k + 1]).empty()) return false;
    }
    return true;
  }

  /// The same path with extra vertices wherever a segment crosses a grid
  /// line, so that each segment stays inside one cell.
  Morphing cell_aligned() const {
    std::vector<ParamPoint> out;
    out.reserve(pts_.size());
    out.push_back(pts_.front());
    for (std::size_t k = 0; k + 1 < pts_.size(); ++k) {
      const auto& p = pts_[k];
      const auto& q = pts_[k + 1];
      for (const auto& [t, snapped] : crossings(p, q)) {
        ParamPoint r{p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
        if (snapped.first) r.x = snapped.second;
        else r.y = snapped.second;
        out.push_back(r);
      }
      out.push_back(q);
    }
    return Morphing(a_, b_, std::move(out));
  }

 private:
  // Parameters t in (0,1) where segment pq crosses a grid line strictly
  // inside its span, with the crossing coordinate (first = x-line).
  std::vector<std::pair<double, std::pair<bool, double>>> crossings(const ParamPoint& p,
                                                                    const ParamPoint& q) const {
    std::vector<std::pair<double, std::pair<bool, double>>> out;
    auto scan = [&](const Curve& c, double u0, double u1, bool is_x) {
      const double lo = std::min(u0, u1), hi = std::max(u0, u1);
      const double eps = 1e-12 * std::max(c.length(), 1e-300);
      if (hi - lo <= 2 * eps) return;
      const auto pre = c.prefix_lengths();
      auto it = std::upper_bound(pre.begin(), pre.end(), lo + eps);
      for (; it != pre.end() && *it < hi - eps; ++it) {
        out.push_back({(*it - u0) / (u1 - u0), {is_x, *it}});
      }
    };
    scan(a_, p.x, q.x, true);
    scan(b_, p.y, q.y, false);
    std::sort(out.begin(), out.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    return out;
  }

  Curve a_, b_;
  std::vector<ParamPoint> pts_;
};

/// Maximum elevation along a cell-aligned morphing. By convexity of the
/// elevation inside a cell the maximum sits at a vertex of the path.
inline double width(const Morphing& m) {
  if (!m.is_cell_aligned()) {
    throw std::invalid_argument("morphing segment spans several cells; call cell_aligned() first");
  }
  double w = 0.0;
  for (const auto& p : m.points()) w = std::max(w, m.elevation_at(p));
  return w;
}

inline bool is_monotone(const Morphing& m) {
  const auto& p = m.points();
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (p[k].x < p[k - 1].x || p[k].y < p[k - 1].y) return false;
  }
  return true;
}

/// Direct monotonization: running maxima of both coordinates.
inline Morphing monotonize(const Morphing& m) {
  std::vector<ParamPoint> out;
  out.reserve(m.size());
  ParamPoint run{0.0, 0.0};
  for (const auto& p : m.points()) {
    run.x = std::max(run.x, p.x);
    run.y = std::max(run.y, p.y);
    out.push_back(run);
  }
  return Morphing(m.a(), m.b(), std::move(out));
}

/// Composition of monotone morphings m1 : a -> x and m2 : x -> b into a
/// morphing a -> b, by a merge over the shared x breakpoints. Where either
/// map stalls (one coordinate constant) the stall is emitted as its own
/// axis-parallel piece, m1's before m2's.
inline Morphing combine(const Morphing& m1, const Morphing& m2) {
  const double lx1 = m1.b().length(), lx2 = m2.a().length();
  if (std::abs(lx1 - lx2) > 1e-9 * std::max({lx1, lx2, 1e-300})) {
    throw std::invalid_argument("combine: morphing domains differ");
  }
  if (!is_monotone(m1) || !is_monotone(m2)) {
    throw std::invalid_argument("combine: both morphings must be monotone");
  }
  const auto& P = m1.points();  // (a, x)
  const auto& Q = m2.points();  // (x, b)
  const double eps = 1e-12 * std::max(lx1, 1e-300);

  std::vector<ParamPoint> out{{0.0, 0.0}};
  auto emit = [&](double a, double b) {
    if (out.back().x != a || out.back().y != b) out.push_back({a, b});
  };
  std::size_t i = 0, j = 0;
  while (i + 1 < P.size() || j + 1 < Q.size()) {
    const ParamPoint cur = out.back();
    if (i + 1 < P.size() && P[i + 1].y <= P[i].y + eps) {
      ++i;
      emit(P[i].x, cur.y);
      continue;
    }
    if (j + 1 < Q.size() && Q[j + 1].x <= Q[j].x + eps) {
      ++j;
      emit(cur.x, Q[j].y);
      continue;
    }
    if (i + 1 == P.size()) {
      ++j;
      emit(cur.x, Q[j].y);
      continue;
    }
    if (j + 1 == Q.size()) {
      ++i;
      emit(P[i].x, cur.y);
      continue;
    }
    const double x1 = P[i + 1].y, x2 = Q[j + 1].x;
    if (x1 < x2 - eps) {
      ++i;
      const double f = (x1 - Q[j].x) / (Q[j + 1].x - Q[j].x);
      emit(P[i].x, std::clamp(Q[j].y + f * (Q[j + 1].y - Q[j].y), Q[j].y, Q[j + 1].y));
    } else if (x2 < x1 - eps) {
      ++j;
      const double f = (x2 - P[i].y) / (P[i + 1].y - P[i].y);
      emit(std::clamp(P[i].x + f * (P[i + 1].x - P[i].x), P[i].x, P[i + 1].x), Q[j].y);
    } else {
      ++i;
      ++j;
      emit(P[i].x, Q[j].y);
    }
  }
  if (out.size() == 1) out.push_back(out.front());
  return Morphing(m1.a(), m2.b(), std::move(out)).cell_aligned();
}

/// Monotonization from the other end: running minima taken backwards, so
/// that a detour is pulled back instead of pushed forward.
inline Morphing monotonize_backward(const Morphing& m) {
  const auto& p = m.points();
  std::vector<ParamPoint> out(p.size());
  ParamPoint run{m.a().length(), m.b().length()};
  for (std::size_t k = p.size(); k-- > 0;) {
    run.x = std::min(run.x, p[k].x);
    run.y = std::min(run.y, p[k].y);
    out[k] = run;
  }
  return Morphing(m.a(), m.b(), std::move(out));
}

namespace detail {

// Largest elevation along the straight piece p -> q, which may cross grid
// lines; per cell the maximum sits at a piece end.
inline double piece_max_elevation(const Curve& a, const Curve& b, const ParamPoint& p,
                                  const ParamPoint& q) {
  double w = std::max(elevation(a, p.x, b, p.y), elevation(a, q.x, b, q.y));
  auto scan = [&](const Curve& c, double u0, double u1) {
    const double lo = std::min(u0, u1), hi = std::max(u0, u1);
    if (hi <= lo) return;
    const auto pre = c.prefix_lengths();
    for (auto it = std::upper_bound(pre.begin(), pre.end(), lo); it != pre.end() && *it < hi; ++it) {
      const double f = (*it - u0) / (u1 - u0);
      w = std::max(w, elevation(a, p.x + f * (q.x - p.x), b, p.y + f * (q.y - p.y)));
    }
  };
  scan(a, p.x, q.x);
  scan(b, p.y, q.y);
  return w;
}

}  // namespace detail

/// Monotonization that, inside each span where the forward (running
/// maxima) and backward (running minima) monotonizations disagree, holds
/// the coordinate at the level c from that span which gives the smallest
/// width there: x' = max(backward, min(forward, c)).
inline Morphing monotonize_leveled(const Morphing& m, std::size_t max_levels = 48) {
  const auto& p = m.points();
  const std::size_t n = p.size();
  auto fwd = monotonize(m).points();
  auto bwd = monotonize_backward(m).points();
  std::vector<ParamPoint> cur = fwd;
  auto local = [&](std::size_t s, std::size_t e) {
    double w = 0.0;
    const std::size_t lo = s > 0 ? s - 1 : 0, hi = std::min(e + 1, n - 1);
    for (std::size_t k = lo; k < hi; ++k) {
      w = std::max(w, detail::piece_max_elevation(m.a(), m.b(), cur[k], cur[k + 1]));
    }
    return w;
  };
  for (int axis = 0; axis < 2; ++axis) {
    auto get = [axis](const ParamPoint& q) { return axis == 0 ? q.x : q.y; };
    auto set = [axis](ParamPoint& q, double v) { (axis == 0 ? q.x : q.y) = v; };
    std::size_t k = 0;
    while (k < n) {
      if (!(get(fwd[k]) > get(bwd[k]))) {
        ++k;
        continue;
      }
      const std::size_t s = k;
      while (k < n && get(fwd[k]) > get(bwd[k])) ++k;
      const std::size_t e = k - 1;
      std::vector<double> levels;
      for (std::size_t r = s; r <= e; ++r) levels.push_back(get(p[r]));
      std::sort(levels.begin(), levels.end());
      levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
      if (levels.size() > max_levels) {
        std::vector<double> thin;
        for (std::size_t q = 0; q < max_levels; ++q) {
          thin.push_back(levels[q * (levels.size() - 1) / (max_levels - 1)]);
        }
        levels = std::move(thin);
      }
      double best_w = std::numeric_limits<double>::infinity(), best_c = get(fwd[e]);
      for (double c : levels) {
        for (std::size_t r = s; r <= e; ++r) set(cur[r], std::max(get(bwd[r]), std::min(get(fwd[r]), c)));
        const double w = local(s, e);
        if (w < best_w) {
          best_w = w;
          best_c = c;
        }
      }
      for (std::size_t r = s; r <= e; ++r) {
        set(cur[r], std::max(get(bwd[r]), std::min(get(fwd[r]), best_c)));
      }
    }
  }
  return Morphing(m.a(), m.b(), std::move(cur));
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct BacktrackIntervals {
  std::vector<Interval> on_a;
  std::vector<Interval> on_b;
};

/// Maximal spans over which a coordinate strictly decreases.
inline BacktrackIntervals backtrack_intervals(const Morphing& m) {
  BacktrackIntervals r;
  const auto& p = m.points();
  auto scan = [&](auto coord, std::vector<Interval>& out) {
    std::size_t k = 1;
    while (k < p.size()) {
      if (coord(p[k]) < coord(p[k - 1])) {
        const double top = coord(p[k - 1]);
        while (k + 1 < p.size() && coord(p[k + 1]) < coord(p[k])) ++k;
        out.push_back({coord(p[k]), top});
      }
      ++k;
    }
  };
  scan([](const ParamPoint& q) { return q.x; }, r.on_a);
  scan([](const ParamPoint& q) { return q.y; }, r.on_b);
  return r;
}

/// Arc-length midpoints of the backtracked spans, per axis.
inline std::pair<std::vector<double>, std::vector<double>> backtrack_midpoints(const Morphing& m) {
  const auto bt = backtrack_intervals(m);
  std::vector<double> xa, xb;
  for (const auto& iv : bt.on_a) xa.push_back(0.5 * (iv.lo + iv.hi));
  for (const auto& iv : bt.on_b) xb.push_back(0.5 * (iv.lo + iv.hi));
  return {xa, xb};
}

}  // namespace frechet_ve
