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

// Elevation function inside one free-space cell, for the edge pair
// p_s p_e (first curve) and q_s q_e (second curve), in uniform arc-length
// parameters s in [0, L_p] and t in [0, L_q]:
//
//   E(s, t) = |u + s p^ - t q^|^2,   u = p_s - q_s.

#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace frechet_ve {

/// s -> slope * s + intercept
struct AffineMap {
  double slope = 0.0;
  double intercept = 0.0;
  double operator()(double v) const { return slope * v + intercept; }
};

struct Portal {
  double t;          // parameter in [0,1] along the edge
  double elevation;  // distance from the vertex to the edge
};

/// Vertex-edge event: nearest point of `edge` to `vertex` and its distance.
inline Portal portal(const Point& vertex, const Segment& edge) {
  detail::require_same_dim(vertex.dim(), edge.start.dim());
  const auto pr = detail::project(vertex.coords(), edge.start.coords(), edge.end.coords());
  return {pr.t, pr.distance};
}

class CellElevation {
 public:
  CellElevation(std::span<const double> ps, std::span<const double> pe, std::span<const double> qs,
                std::span<const double> qe) {
    init(ps, pe, qs, qe);
  }

  CellElevation(const Segment& p, const Segment& q) {
    detail::require_same_dim(p.start.dim(), q.start.dim());
    init(p.start.coords(), p.end.coords(), q.start.coords(), q.end.coords());
  }

  static CellElevation of_cell(const Curve& a, std::size_t i, const Curve& b, std::size_t j) {
    return CellElevation(a.vertex(i), a.vertex(i + 1), b.vertex(j), b.vertex(j + 1));
  }

  double length_p() const { return lp_; }
  double length_q() const { return lq_; }
  double dot_pq() const { return dot_; }
  double u_dot_p() const { return up_; }
  double u_dot_q() const { return uq_; }

  /// Elevation evaluated as the norm of the affine map (no cancellation).
  double elevation(double s, double t) const {
    check(s, t);
    return unchecked(s, t);
  }

  double unchecked(double s, double t) const {
    double acc = 0.0;
    for (std::size_t k = 0; k < u_.size(); ++k) {
      const double d = u_[k] + s * ph_[k] - t * qh_[k];
      acc += d * d;
    }
    return std::sqrt(acc);
  }

  /// Expanded quadratic form of E(s,t).
  double squared(double s, double t) const {
    return uu_ + 2.0 * (s * up_ - t * uq_) + s * s - 2.0 * s * t * dot_ + t * t;
  }

  /// (dE/ds, dE/dt).
  std::pair<double, double> gradient(double s, double t) const {
    return {2.0 * up_ + 2.0 * s - 2.0 * t * dot_, -2.0 * uq_ - 2.0 * s * dot_ + 2.0 * t};
  }

  /// h(alpha): the s minimizing E(., alpha); v(beta): the t minimizing
  /// E(beta, .). Unclamped.
  std::pair<AffineMap, AffineMap> min_lines() const {
    return {AffineMap{dot_, -up_}, AffineMap{dot_, uq_}};
  }

  /// Unconstrained minimizer of E, if the edges are not parallel.
  std::optional<std::pair<double, double>> stationary_point() const {
    const double det = 1.0 - dot_ * dot_;
    if (det <= 1e-14) return std::nullopt;
    const double s = (-up_ + dot_ * uq_) / det;
    const double t = (uq_ - dot_ * up_) / det;
    return std::pair{s, t};
  }

  /// Minimum elevation over the closed cell (segment-segment distance).
  double min_elevation() const {
    if (auto st = stationary_point()) {
      const auto [s, t] = *st;
      if (s >= 0.0 && s <= lp_ && t >= 0.0 && t <= lq_) return unchecked(s, t);
    }
    // Minimum lies on the boundary: the best of the four edge minima.
    double best = std::numeric_limits<double>::infinity();
    for (double t : {0.0, lq_}) {
      const double s = std::clamp(dot_ * t - up_, 0.0, lp_);
      best = std::min(best, unchecked(s, t));
    }
    for (double s : {0.0, lp_}) {
      const double t = std::clamp(dot_ * s + uq_, 0.0, lq_);
      best = std::min(best, unchecked(s, t));
    }
    return best;
  }

 private:
  void init(std::span<const double> ps, std::span<const double> pe, std::span<const double> qs,
            std::span<const double> qe) {
    const std::size_t d = ps.size();
    u_.resize(d);
    ph_.resize(d);
    qh_.resize(d);
    lp_ = detail::distance(ps, pe);
    lq_ = detail::distance(qs, qe);
    if (lp_ <= 0.0 || lq_ <= 0.0) throw GeometryError("cell edge has zero length");
    dot_ = up_ = uq_ = uu_ = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      u_[k] = ps[k] - qs[k];
      ph_[k] = (pe[k] - ps[k]) / lp_;
      qh_[k] = (qe[k] - qs[k]) / lq_;
    }
    for (std::size_t k = 0; k < d; ++k) {
      dot_ += ph_[k] * qh_[k];
      up_ += u_[k] * ph_[k];
      uq_ += u_[k] * qh_[k];
      uu_ += u_[k] * u_[k];
    }
  }

  void check(double s, double t) const {
    const double ts = 1e-9 * lp_, tt = 1e-9 * lq_;
    if (s < -ts || s > lp_ + ts || t < -tt || t > lq_ + tt) {
      throw std::out_of_range("cell parameters outside the cell");
    }
  }

  std::vector<double> u_, ph_, qh_;
  double lp_ = 0, lq_ = 0, dot_ = 0, up_ = 0, uq_ = 0, uu_ = 0;
};

}  // namespace frechet_ve
