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
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace frechet_ve {

/// Raised for malformed geometric input: mismatched dimensions, non-finite
/// coordinates, empty curves.
class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a distance computation receives a curve that collapsed to a
/// single point.
class DegenerateCurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) { validate(); }
  Point(std::initializer_list<double> coords) : coords_(coords) { validate(); }
  explicit Point(std::span<const double> coords) : coords_(coords.begin(), coords.end()) {
    validate();
  }

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }
  std::span<const double> coords() const { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  void validate() const {
    if (coords_.empty()) throw GeometryError("point must have at least one coordinate");
    for (double c : coords_) {
      if (!std::isfinite(c)) throw GeometryError("point coordinates must be finite");
    }
  }

  std::vector<double> coords_;
};

struct Segment {
  Point start;
  Point end;

  Segment(Point s, Point e) : start(std::move(s)), end(std::move(e)) {
    if (start.dim() != end.dim()) throw GeometryError("segment endpoints differ in dimension");
  }
  double length() const;
};

namespace detail {

inline double squared_distance(std::span<const double> p, std::span<const double> q) {
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = p[k] - q[k];
    acc += d * d;
  }
  return acc;
}

inline double distance(std::span<const double> p, std::span<const double> q) {
  return std::sqrt(squared_distance(p, q));
}

struct Projection {
  double t;         // parameter in [0,1] along a->b
  double distance;  // distance from p to the foot
};

// Nearest point of segment ab to p. A zero-length segment projects to t = 0.
inline Projection project(std::span<const double> p, std::span<const double> a,
                          std::span<const double> b) {
  double len2 = 0.0, dot = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double e = b[k] - a[k];
    len2 += e * e;
    dot += (p[k] - a[k]) * e;
  }
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(dot / len2, 0.0, 1.0);
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = p[k] - (a[k] + t * (b[k] - a[k]));
    acc += d * d;
  }
  return {t, std::sqrt(acc)};
}

inline void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw GeometryError("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace detail

inline double dist(const Point& p, const Point& q) {
  detail::require_same_dim(p.dim(), q.dim());
  return detail::distance(p.coords(), q.coords());
}

inline double Segment::length() const { return dist(start, end); }

struct SegmentProjection {
  double t;
  Point foot;
  double distance;
};

inline SegmentProjection nearest_on_segment(const Point& p, const Segment& s) {
  detail::require_same_dim(p.dim(), s.start.dim());
  const auto pr = detail::project(p.coords(), s.start.coords(), s.end.coords());
  std::vector<double> foot(p.dim());
  for (std::size_t k = 0; k < p.dim(); ++k) {
    foot[k] = s.start[k] + pr.t * (s.end[k] - s.start[k]);
  }
  return {pr.t, Point(std::move(foot)), pr.distance};
}

/// An immutable polyline with cached prefix arc-lengths.
///
/// Copies share the underlying storage, so passing a Curve by value is cheap.
/// Consecutive duplicate vertices are removed on construction; a curve whose
/// vertices all coincide is kept as two coincident vertices and reports
/// degenerate().
class Curve {
 public:
  Curve() : d_(std::make_shared<Data>()) {}

  static Curve from_points(const std::vector<Point>& pts) {
    if (pts.empty()) throw GeometryError("curve needs at least one vertex");
    const std::size_t dim = pts.front().dim();
    std::vector<double> flat;
    flat.reserve(pts.size() * dim);
    for (const auto& p : pts) {
      detail::require_same_dim(dim, p.dim());
      flat.insert(flat.end(), p.coords().begin(), p.coords().end());
    }
    return from_coords(std::move(flat), dim);
  }

  /// Builds a curve from row-major coordinates. When `kept` is given it
  /// receives, for every surviving vertex, the index of the input row it
  /// came from.
  static Curve from_coords(std::vector<double> flat, std::size_t dim,
                           std::vector<std::size_t>* kept = nullptr) {
    if (dim == 0) throw GeometryError("dimension must be at least 1");
    if (flat.empty() || flat.size() % dim != 0) {
      throw GeometryError("coordinate count is not a positive multiple of the dimension");
    }
    for (double c : flat) {
      if (!std::isfinite(c)) throw GeometryError("curve coordinates must be finite");
    }
    const std::size_t raw = flat.size() / dim;
    auto data = std::make_shared<Data>();
    data->dim = dim;
    data->coords.reserve(flat.size());
    std::vector<std::size_t> kept_rows;
    kept_rows.reserve(raw);
    for (std::size_t i = 0; i < raw; ++i) {
      std::span<const double> row(flat.data() + i * dim, dim);
      if (!kept_rows.empty()) {
        std::span<const double> prev(data->coords.data() + data->coords.size() - dim, dim);
        if (std::equal(row.begin(), row.end(), prev.begin())) continue;
      }
      data->coords.insert(data->coords.end(), row.begin(), row.end());
      kept_rows.push_back(i);
    }
    data->dropped = raw - kept_rows.size();
    if (kept_rows.size() == 1) {
      // Single point: stored as a zero-length segment.
      data->coords.insert(data->coords.end(), flat.begin(), flat.begin() + dim);
      kept_rows.push_back(kept_rows.front());
      data->degenerate = true;
    }
    const std::size_t n = kept_rows.size();
    data->prefix.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
      data->prefix[i] = data->prefix[i - 1] +
                        detail::distance(vertex_span(*data, i - 1), vertex_span(*data, i));
    }
    if (kept) *kept = std::move(kept_rows);
    return Curve(std::move(data));
  }

  std::size_t size() const { return d_->prefix.size(); }
  std::size_t dim() const { return d_->dim; }
  bool empty() const { return d_->prefix.empty(); }
  bool degenerate() const { return d_->degenerate; }
  std::size_t dropped_duplicates() const { return d_->dropped; }

  std::span<const double> vertex(std::size_t i) const { return vertex_span(*d_, i); }
  Point point(std::size_t i) const { return Point(vertex(i)); }
  std::vector<Point> vertices() const {
    std::vector<Point> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
    return out;
  }

  std::span<const double> prefix_lengths() const { return d_->prefix; }
  double prefix(std::size_t i) const { return d_->prefix[i]; }
  double length() const { return d_->prefix.empty() ? 0.0 : d_->prefix.back(); }
  double edge_length(std::size_t i) const { return d_->prefix[i + 1] - d_->prefix[i]; }
  std::size_t edge_count() const { return size() < 2 ? 0 : size() - 1; }

  /// Tolerance used for arc-length comparisons on this curve.
  double tolerance() const { return 1e-9 * std::max(length(), 1e-300); }

  /// Index of the edge containing arc-length x: the largest i with
  /// prefix(i) <= x, capped to the last edge.
  std::size_t edge_at(double x) const {
    const auto& pre = d_->prefix;
    auto it = std::upper_bound(pre.begin(), pre.end(), x);
    std::size_t i = it == pre.begin() ? 0 : static_cast<std::size_t>(it - pre.begin()) - 1;
    return std::min(i, edge_count() - 1);
  }

  /// Writes the point at arc-length x into `out` (size dim()). x is clamped
  /// to [0, length()] without range checks.
  void point_at_into(double x, std::span<double> out) const {
    const std::size_t n = size();
    if (x >= d_->prefix[n - 1]) {
      auto v = vertex(n - 1);
      std::copy(v.begin(), v.end(), out.begin());
      return;
    }
    if (x <= 0.0) {
      auto v = vertex(0);
      std::copy(v.begin(), v.end(), out.begin());
      return;
    }
    const std::size_t i = edge_at(x);
    const double len = edge_length(i);
    const double f = len > 0.0 ? (x - d_->prefix[i]) / len : 0.0;
    auto a = vertex(i);
    auto b = vertex(i + 1);
    for (std::size_t k = 0; k < dim(); ++k) out[k] = a[k] + f * (b[k] - a[k]);
  }

  /// The point at arc-length x. Values within tolerance() outside
  /// [0, length()] are clamped; anything further out throws.
  Point point_at_arclength(double x) const {
    check_arclength(x);
    std::vector<double> out(dim());
    point_at_into(x, out);
    return Point(std::move(out));
  }

  void check_arclength(double x) const {
    if (!(x >= -tolerance() && x <= length() + tolerance())) {
      throw std::out_of_range("arc-length " + std::to_string(x) + " outside [0, " +
                              std::to_string(length()) + "]");
    }
  }

  /// Refinement: inserts vertices at the given arc-lengths. Existing vertices
  /// keep their exact prefix lengths; positions that coincide with an
  /// existing vertex (within tolerance) or lie on the boundary are ignored.
  Curve refined(std::vector<double> arclengths) const {
    std::sort(arclengths.begin(), arclengths.end());
    const double eps = 1e-12 * std::max(length(), 1e-300);
    auto data = std::make_shared<Data>();
    data->dim = dim();
    data->dropped = d_->dropped;
    data->degenerate = d_->degenerate;
    std::vector<double> buf(dim());
    std::size_t next = 0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      auto v = vertex(i);
      data->coords.insert(data->coords.end(), v.begin(), v.end());
      data->prefix.push_back(d_->prefix[i]);
      if (i + 1 == n) break;
      const double lo = d_->prefix[i], hi = d_->prefix[i + 1];
      while (next < arclengths.size() && arclengths[next] <= lo + eps) ++next;
      while (next < arclengths.size() && arclengths[next] < hi - eps) {
        const double x = arclengths[next++];
        if (x <= data->prefix.back() + eps) continue;
        point_at_into(x, buf);
        data->coords.insert(data->coords.end(), buf.begin(), buf.end());
        data->prefix.push_back(x);
      }
    }
    return Curve(std::move(data));
  }

 private:
  struct Data {
    std::size_t dim = 0;
    std::vector<double> coords;
    std::vector<double> prefix;
    std::size_t dropped = 0;
    bool degenerate = false;
  };

  explicit Curve(std::shared_ptr<Data> d) : d_(std::move(d)) {}

  static std::span<const double> vertex_span(const Data& d, std::size_t i) {
    return {d.coords.data() + i * d.dim, d.dim};
  }

  std::shared_ptr<const Data> d_;
};

inline Point point_at_arclength(const Curve& c, double x) { return c.point_at_arclength(x); }

inline void require_valid(const Curve& c) {
  if (c.empty()) throw GeometryError("empty curve");
  if (c.degenerate()) throw DegenerateCurveError("curve collapses to a single point");
}

/// Elevation at the parameter pair (x, y): the distance between a(x) and b(y).
inline double elevation(const Curve& a, double x, const Curve& b, double y) {
  detail::require_same_dim(a.dim(), b.dim());
  constexpr std::size_t kInline = 8;
  const std::size_t dim = a.dim();
  if (dim <= kInline) {
    double pa[kInline], pb[kInline];
    a.point_at_into(x, {pa, dim});
    b.point_at_into(y, {pb, dim});
    return detail::distance({pa, dim}, {pb, dim});
  }
  std::vector<double> pa(dim), pb(dim);
  a.point_at_into(x, pa);
  b.point_at_into(y, pb);
  return detail::distance(pa, pb);
}

/// A common length scale for tolerances on a pair of curves.
inline double pair_scale(const Curve& a, const Curve& b) {
  return std::max({a.length(), b.length(), 1e-300});
}

}  // namespace frechet_ve
