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
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "geometry.hpp"
#include "morphing.hpp"
#include "simplification.hpp"
#include "ve_frechet.hpp"

namespace frechet_ve {

enum class CertificateStatus { Exact, Approx, IterationCapped };

/// Bracket [lower, upper] on the Frechet distance, with a monotone morphing
/// of width `upper` over the input curves.
struct DistanceCertificate {
  double lower = 0.0;
  double upper = 0.0;
  Morphing morphing;
  std::size_t rounds = 0;
  CertificateStatus status = CertificateStatus::IterationCapped;
  double ratio = 1.0;  // requested ratio, for Approx
  std::size_t explored = 0;

  double value() const { return status == CertificateStatus::Exact ? upper : 0.5 * (lower + upper); }
};

struct ExactOptions {
  std::size_t max_rounds = 100;
  double rel_tol = 1e-10;
};

namespace detail {

inline bool within_tol(double lower, double upper, double rel_tol) {
  return upper - lower <= rel_tol * upper;
}

}  // namespace detail

/// Parameter t in (0,1) at which the segment a->b crosses the bisector of u
/// and v, if it does so strictly inside.
inline std::optional<double> bisector_point_on_segment(std::span<const double> u,
                                                       std::span<const double> v,
                                                       std::span<const double> a,
                                                       std::span<const double> b) {
  double den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) den += 2.0 * (b[k] - a[k]) * (v[k] - u[k]);
  if (den == 0.0) return std::nullopt;
  const double t = (detail::squared_distance(a, v) - detail::squared_distance(a, u)) / den;
  if (!(t > 0.0 && t < 1.0)) return std::nullopt;
  return t;
}

/// Refines each edge on which the morphing backtracks at the points
/// equidistant from two vertices of the other curve whose lines the
/// morphing crosses while on that edge (one more vertex on either side).
/// Per edge at most `max_vertices` vertices take part, the ones furthest
/// from the edge.
inline std::pair<Curve, Curve> bisector_refine(const Curve& a, const Curve& b, const Morphing& m,
                                               std::size_t max_vertices = 24) {
  const auto& p = m.points();
  auto scan = [&](const Curve& on, const Curve& other, bool y_axis) {
    auto coord = [&](const ParamPoint& q) { return y_axis ? q.y : q.x; };
    auto ocoord = [&](const ParamPoint& q) { return y_axis ? q.x : q.y; };
    std::vector<std::size_t> edges;
    for (std::size_t k = 1; k < p.size(); ++k) {
      if (coord(p[k]) < coord(p[k - 1])) edges.push_back(on.edge_at(0.5 * (coord(p[k]) + coord(p[k - 1]))));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::vector<double> out;
    const double eps = 1e-12 * std::max(on.length(), 1e-300);
    const auto pre = other.prefix_lengths();
    for (std::size_t e : edges) {
      double olo = std::numeric_limits<double>::infinity(), ohi = -olo;
      for (const auto& q : p) {
        if (coord(q) >= on.prefix(e) - eps && coord(q) <= on.prefix(e + 1) + eps) {
          olo = std::min(olo, ocoord(q));
          ohi = std::max(ohi, ocoord(q));
        }
      }
      if (olo > ohi) continue;
      std::size_t first = std::lower_bound(pre.begin(), pre.end(), olo) - pre.begin();
      std::size_t last = std::upper_bound(pre.begin(), pre.end(), ohi) - pre.begin();
      first = first > 0 ? first - 1 : 0;
      last = std::min(last + 1, other.size());
      std::vector<std::size_t> verts;
      for (std::size_t u = first; u < last; ++u) verts.push_back(u);
      if (verts.size() > max_vertices) {
        auto far = [&](std::size_t u) {
          return detail::project(other.vertex(u), on.vertex(e), on.vertex(e + 1)).distance;
        };
        std::nth_element(verts.begin(), verts.begin() + max_vertices, verts.end(),
                         [&](std::size_t l, std::size_t r) { return far(l) > far(r); });
        verts.resize(max_vertices);
      }
      for (std::size_t x = 0; x < verts.size(); ++x) {
        for (std::size_t y = x + 1; y < verts.size(); ++y) {
          if (auto t = bisector_point_on_segment(other.vertex(verts[x]), other.vertex(verts[y]),
                                                 on.vertex(e), on.vertex(e + 1))) {
            out.push_back(on.prefix(e) + *t * on.edge_length(e));
          }
        }
      }
    }
    return out;
  };
  auto new_a = scan(a, b, false);
  auto new_b = scan(b, a, true);
  return {new_a.empty() ? a : a.refined(new_a), new_b.empty() ? b : b.refined(new_b)};
}

/// Exact Frechet distance by refinement: the VE distance of the refined
/// curves is a lower bound, the width of the monotonized VE morphing an
/// upper bound; backtracked spans are refined until the two meet.
inline DistanceCertificate frechet_exact(const Curve& a, const Curve& b, ExactOptions opts = {}) {
  require_valid(a);
  require_valid(b);
  detail::require_same_dim(a.dim(), b.dim());
  DistanceCertificate cert;
  cert.lower = 0.0;
  cert.upper = std::numeric_limits<double>::infinity();
  Curve ra = a, rb = b;
  for (std::size_t round = 0;; ++round) {
    auto ve = ve_frechet(ra, rb);
    cert.explored += ve.explored;
    cert.lower = std::max(cert.lower, ve.distance);
    for (auto mono : {monotonize(ve.morphing).cell_aligned(),
                      monotonize_backward(ve.morphing).cell_aligned(),
                      monotonize_leveled(ve.morphing).cell_aligned()}) {
      const double up = width(mono);
      if (up < cert.upper) {
        cert.upper = up;
        cert.morphing = mono.with_curves(a, b);
      }
    }
    cert.rounds = round;
    cert.lower = std::min(cert.lower, cert.upper);
    if (detail::within_tol(cert.lower, cert.upper, opts.rel_tol)) {
      cert.status = CertificateStatus::Exact;
      return cert;
    }
    if (round >= opts.max_rounds) break;
    auto [xa, xb] = backtrack_midpoints(ve.morphing);
    auto [ba, bb] = bisector_refine(ra, rb, ve.morphing);
    Curve na = ba.refined(xa), nb = bb.refined(xb);
    if (na.size() == ra.size() && nb.size() == rb.size()) break;
    ra = std::move(na);
    rb = std::move(nb);
  }
  cert.status = CertificateStatus::IterationCapped;
  return cert;
}

struct ApproxOptions {
  std::size_t max_rounds = 64;
  ExactOptions exact;
};

namespace detail {

inline double bbox_diagonal(const Curve& a, const Curve& b) {
  std::vector<double> lo(a.dim(), std::numeric_limits<double>::infinity());
  std::vector<double> hi(a.dim(), -std::numeric_limits<double>::infinity());
  for (const Curve* c : {&a, &b}) {
    for (std::size_t i = 0; i < c->size(); ++i) {
      auto v = c->vertex(i);
      for (std::size_t k = 0; k < v.size(); ++k) {
        lo[k] = std::min(lo[k], v[k]);
        hi[k] = std::max(hi[k], v[k]);
      }
    }
  }
  return distance(lo, hi);
}

struct SimplifiedBound {
  double lower;
  double upper;
  Morphing morphing;
  std::size_t explored;
};

// Bounds via a pair of vertex subsequences: exact distance between them,
// corrected by the widths of the greedy morphings onto them.
inline SimplifiedBound bound_through(const Curve& a, const Curve& b, const SimplifiedCurve& sa,
                                     const SimplifiedCurve& sb, const ExactOptions& opts) {
  auto m1 = greedy_morphing(a, sa);
  auto m3 = greedy_morphing(b, sb).reversed();
  auto ex = frechet_exact(sa.curve, sb.curve, opts);
  auto full = combine(combine(m1, ex.morphing), m3);
  const double w1 = width(m1.cell_aligned()), w3 = width(m3.cell_aligned());
  return {std::max(0.0, ex.lower - w1 - w3), width(full), std::move(full), ex.explored};
}

}  // namespace detail

/// Certificate with upper <= ratio * lower, from exact computations on
/// progressively finer simplifications of both curves.
inline DistanceCertificate frechet_approx(const Curve& a, const Curve& b, double ratio,
                                          ApproxOptions opts = {}) {
  require_valid(a);
  require_valid(b);
  detail::require_same_dim(a.dim(), b.dim());
  if (!(ratio > 1.0)) throw std::invalid_argument("frechet_approx: ratio must exceed 1");
  const auto pa = comp_profile(a), pb = comp_profile(b);
  double delta = std::max(detail::distance(a.vertex(0), b.vertex(0)),
                          detail::distance(a.vertex(a.size() - 1), b.vertex(b.size() - 1)));
  const double diag = detail::bbox_diagonal(a, b);
  if (delta <= 1e-9 * diag) delta = diag / 8.0;
  DistanceCertificate cert;
  cert.ratio = ratio;
  cert.upper = std::numeric_limits<double>::infinity();
  for (std::size_t round = 0; round <= opts.max_rounds; ++round, delta *= 0.5) {
    cert.rounds = round;
    auto sa = combined_simplify(pa, delta);
    auto sb = combined_simplify(pb, delta);
    if (sa.curve.degenerate() || sb.curve.degenerate()) continue;
    auto bound = detail::bound_through(a, b, sa, sb, opts.exact);
    cert.explored += bound.explored;
    cert.lower = std::max(cert.lower, bound.lower);
    if (bound.upper < cert.upper) {
      cert.upper = bound.upper;
      cert.morphing = std::move(bound.morphing);
    }
    cert.lower = std::min(cert.lower, cert.upper);
    if (cert.upper <= ratio * cert.lower || cert.upper == 0.0) {
      cert.status = CertificateStatus::Approx;
      return cert;
    }
    const bool full = sa.indices.size() == a.size() && sb.indices.size() == b.size();
    if (full) break;
  }
  cert.status = CertificateStatus::IterationCapped;
  return cert;
}

/// Per-vertex slack lb - (largest leash at the vertex along sigma),
/// clamped at 0, for both curves.
struct SlackTable {
  std::vector<double> a;
  std::vector<double> b;
  double lb = 0.0;
};

namespace detail {

// Largest elevation of a monotone morphing on each vertex line of the
// curve on the chosen axis.
inline std::vector<double> max_on_vertex_lines(const Morphing& m, bool y_axis) {
  const Curve& c = y_axis ? m.b() : m.a();
  std::vector<double> out(c.size(), 0.0);
  const auto& p = m.points();
  const double eps = 1e-12 * std::max(c.length(), 1e-300);
  auto coord = [&](const ParamPoint& q) { return y_axis ? q.y : q.x; };
  std::size_t v = 0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    const double u0 = coord(p[k]), u1 = coord(p[k + 1]);
    while (v < c.size() && c.prefix(v) < u0 - eps) ++v;
    for (std::size_t r = v; r < c.size() && c.prefix(r) <= u1 + eps; ++r) {
      const double x = c.prefix(r);
      if (u1 - u0 <= eps) {
        if (std::abs(x - u0) <= eps) {
          out[r] = std::max({out[r], m.elevation_at(p[k]), m.elevation_at(p[k + 1])});
        }
        continue;
      }
      const double f = std::clamp((x - u0) / (u1 - u0), 0.0, 1.0);
      const ParamPoint q{p[k].x + f * (p[k + 1].x - p[k].x), p[k].y + f * (p[k + 1].y - p[k].y)};
      out[r] = std::max(out[r], m.elevation_at(q));
    }
  }
  return out;
}

}  // namespace detail

inline SlackTable slack_table(const Morphing& sigma, double lb) {
  if (!is_monotone(sigma)) throw std::invalid_argument("slack_table: morphing must be monotone");
  SlackTable s;
  s.lb = lb;
  s.a = detail::max_on_vertex_lines(sigma, false);
  s.b = detail::max_on_vertex_lines(sigma, true);
  for (double& v : s.a) v = std::max(lb - v, 0.0);
  for (double& v : s.b) v = std::max(lb - v, 0.0);
  return s;
}

/// Keeps a vertex when it has no slack or lies further than slack/tau from
/// the current representative; the skipped ones are represented by the last
/// kept vertex.
inline SimplifiedCurve sensitive_simplify(const Curve& c, const std::vector<double>& slack,
                                          double tau) {
  require_valid(c);
  if (slack.size() != c.size()) throw std::invalid_argument("sensitive_simplify: slack size mismatch");
  if (!(tau > 0.0)) throw std::invalid_argument("sensitive_simplify: tau must be positive");
  std::vector<std::size_t> idx{0};
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    if (slack[i] <= 0.0 || detail::distance(c.vertex(i), c.vertex(idx.back())) > slack[i] / tau) {
      idx.push_back(i);
    }
  }
  idx.push_back(c.size() - 1);
  return detail::make_simplified(c, idx);
}

/// Upper bounds on the Frechet distance between each simplified edge and
/// the piece of the source it spans.
using EdgeWidths = std::vector<double>;

inline EdgeWidths edge_widths(const Curve& source, const SimplifiedCurve& sub) {
  EdgeWidths w;
  for (std::size_t r = 0; r + 1 < sub.indices.size(); ++r) {
    w.push_back(spine_width(source, sub.indices[r], sub.indices[r + 1]));
  }
  return w;
}

/// Lower bound on the Frechet distance between the sources of two
/// simplified curves: VE distance with every point's leash shortened by the
/// widths of the edges it lies on, refined at backtracks while rounds remain.
inline double frechet_lower_bound_D(const Curve& sa, const Curve& sb, const EdgeWidths& wa,
                                    const EdgeWidths& wb, std::size_t max_rounds = 10) {
  require_valid(sa);
  require_valid(sb);
  const auto oa = OffsetProfile::from_edges(sa, wa);
  const auto ob = OffsetProfile::from_edges(sb, wb);
  Curve ra = sa, rb = sb;
  double best = 0.0;
  for (std::size_t round = 0;; ++round) {
    auto ve = ve_frechet(ra, rb, &oa, &ob);
    best = std::max(best, ve.distance);
    if (is_monotone(ve.morphing) || round >= max_rounds) break;
    auto [xa, xb] = backtrack_midpoints(ve.morphing);
    Curve na = ra.refined(xa), nb = rb.refined(xb);
    if (na.size() == ra.size() && nb.size() == rb.size()) break;
    ra = std::move(na);
    rb = std::move(nb);
  }
  return std::max(best, 0.0);
}

struct ViaSimplificationOptions {
  double psi = 4.0;
  double tau0 = 4.0;
  std::size_t max_doublings = 30;
  ExactOptions exact;
};

/// Exact distance through slack-sensitive simplifications: the simplified
/// pair's morphing lifted back gives the upper bound, the width-shortened VE
/// distance the lower bound; tau doubles until they meet.
inline DistanceCertificate frechet_exact_via_simplification(const Curve& a, const Curve& b,
                                                            ViaSimplificationOptions opts = {}) {
  require_valid(a);
  require_valid(b);
  detail::require_same_dim(a.dim(), b.dim());
  auto approx = frechet_approx(a, b, opts.psi, ApproxOptions{64, opts.exact});
  const double lb = approx.lower;
  const auto slack = slack_table(approx.morphing, lb);
  DistanceCertificate cert;
  cert.lower = lb;
  cert.upper = approx.upper;
  cert.morphing = approx.morphing;
  cert.explored = approx.explored;
  double tau = opts.tau0;
  for (std::size_t round = 0; round < opts.max_doublings; ++round, tau *= 2.0) {
    cert.rounds = round;
    auto sa = sensitive_simplify(a, slack.a, tau);
    auto sb = sensitive_simplify(b, slack.b, tau);
    if (sa.curve.degenerate() || sb.curve.degenerate()) continue;
    const bool full = sa.indices.size() == a.size() && sb.indices.size() == b.size();
    if (full) break;
    auto bound = detail::bound_through(a, b, sa, sb, opts.exact);
    cert.explored += bound.explored;
    if (bound.upper < cert.upper) {
      cert.upper = bound.upper;
      cert.morphing = std::move(bound.morphing);
    }
    const double lower_d =
        frechet_lower_bound_D(sa.curve, sb.curve, edge_widths(a, sa), edge_widths(b, sb));
    cert.lower = std::min(std::max({cert.lower, lower_d, bound.lower}), cert.upper);
    if (detail::within_tol(cert.lower, cert.upper, opts.exact.rel_tol)) {
      cert.status = CertificateStatus::Exact;
      return cert;
    }
  }
  auto ex = frechet_exact(a, b, opts.exact);
  ex.explored += cert.explored;
  if (ex.status != CertificateStatus::Exact) {
    ex.lower = std::max(ex.lower, cert.lower);
    if (cert.upper < ex.upper) {
      ex.upper = cert.upper;
      ex.morphing = cert.morphing;
    }
  }
  return ex;
}

enum class Verdict { Below, Above };

struct DecideOptions {
  std::vector<double> levels{0.25, 1.0 / 16.0};  // simplification widths, as threshold fractions
  ExactOptions exact;
};

/// Whether distFr(a, b) <= threshold (Below) or > threshold (Above). Exact
/// ties within rel_tol count as Below. Profiles, when given, must belong to
/// a and b.
inline Verdict decide(const Curve& a, const Curve& b, double threshold,
                      const SimplificationProfile* pa = nullptr,
                      const SimplificationProfile* pb = nullptr, DecideOptions opts = {}) {
  require_valid(a);
  require_valid(b);
  detail::require_same_dim(a.dim(), b.dim());
  const double slack = opts.exact.rel_tol * std::max(threshold, 0.0);
  const double ends = std::max(detail::distance(a.vertex(0), b.vertex(0)),
                               detail::distance(a.vertex(a.size() - 1), b.vertex(b.size() - 1)));
  if (ends > threshold + slack) return Verdict::Above;
  if (threshold > 0.0) {
    std::optional<SimplificationProfile> own_a, own_b;
    if (!pa) pa = &own_a.emplace(comp_profile(a));
    if (!pb) pb = &own_b.emplace(comp_profile(b));
    for (double f : opts.levels) {
      auto sa = extract(*pa, f * threshold);
      auto sb = extract(*pb, f * threshold);
      if (sa.curve.degenerate() || sb.curve.degenerate()) continue;
      const double wa = width(greedy_morphing(a, sa).cell_aligned());
      const double wb = width(greedy_morphing(b, sb).cell_aligned());
      auto ve = ve_frechet_bounded(sa.curve, sb.curve, threshold + slack + wa + wb);
      if (!ve) return Verdict::Above;
      const double up = width(monotonize(ve->morphing).cell_aligned());
      if (up + wa + wb <= threshold) return Verdict::Below;
    }
  }
  if (!ve_frechet_bounded(a, b, threshold + slack)) return Verdict::Above;
  auto ex = frechet_exact(a, b, opts.exact);
  if (ex.upper <= threshold + slack) return Verdict::Below;
  if (ex.lower > threshold + slack) return Verdict::Above;
  return ex.value() <= threshold ? Verdict::Below : Verdict::Above;
}

}  // namespace frechet_ve
