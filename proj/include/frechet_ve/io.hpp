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

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geometry.hpp"
#include "morphing.hpp"
#include "simplification.hpp"

namespace frechet_ve {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Plain-text curve: one vertex per line, whitespace-separated decimals,
/// '#' starts a comment line. Consecutive duplicates are dropped (see
/// Curve::dropped_duplicates); fewer than two distinct vertices is an error.
inline Curve parse_curve(std::istream& in, const std::string& source = "<input>") {
  std::vector<double> flat;
  std::size_t dim = 0, lineno = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v(line);
    const auto first = v.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || v[first] == '#') continue;
    std::size_t count = 0, pos = first;
    while (pos < v.size()) {
      const auto end = std::min(v.find_first_of(" \t\r", pos), v.size());
      const auto tok = v.substr(pos, end - pos);
      double x = 0.0;
      const char* b = tok.data();
      if (!tok.empty() && tok.front() == '+') ++b;
      const auto [ptr, ec] = std::from_chars(b, tok.data() + tok.size(), x);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(x)) {
        throw ParseError(source, lineno, "invalid number '" + std::string(tok) + "'");
      }
      flat.push_back(x);
      ++count;
      pos = v.find_first_not_of(" \t\r", end);
      if (pos == std::string_view::npos) break;
    }
    if (dim == 0) {
      dim = count;
    } else if (count != dim) {
      throw ParseError(source, lineno,
                       "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(count));
    }
  }
  if (dim == 0) throw ParseError(source, lineno, "no vertices");
  auto c = Curve::from_coords(std::move(flat), dim);
  if (c.degenerate()) throw ParseError(source, lineno, "fewer than two distinct vertices");
  return c;
}

inline Curve load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_curve(in, path);
}

/// Shortest decimal text that reads back to the same double (17 digits).
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct MorphingEvent {
  double t_a = 0.0;  // arc-length on the first curve
  double t_b = 0.0;  // arc-length on the second curve
  double leash = 0.0;
};

struct MorphingReport {
  std::string mode;
  double width = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<MorphingEvent> events;
};

/// One event per morphing vertex of the cell-aligned morphing; `width` is
/// the largest leash.
inline MorphingReport make_report(const std::string& mode, const Morphing& m, double lower,
                                  double upper) {
  MorphingReport r{mode, 0.0, lower, upper, {}};
  const Morphing cm = m.is_cell_aligned() ? m : m.cell_aligned();
  for (const auto& p : cm.points()) {
    r.events.push_back({p.x, p.y, cm.elevation_at(p)});
    r.width = std::max(r.width, r.events.back().leash);
  }
  return r;
}

inline std::string to_json(const MorphingReport& r) {
  std::string s = "{\n";
  s += "  \"mode\": " + nlohmann::json(r.mode).dump() + ",\n";
  s += "  \"width\": " + format_number(r.width) + ",\n";
  s += "  \"lower\": " + format_number(r.lower) + ",\n";
  s += "  \"upper\": " + format_number(r.upper) + ",\n";
  s += "  \"events\": [";
  for (std::size_t k = 0; k < r.events.size(); ++k) {
    const auto& e = r.events[k];
    s += k == 0 ? "\n" : ",\n";
    s += "    {\"t_a\": " + format_number(e.t_a) + ", \"t_b\": " + format_number(e.t_b) +
         ", \"leash\": " + format_number(e.leash) + "}";
  }
  s += r.events.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return s;
}

inline MorphingReport report_from_json(const std::string& text) {
  MorphingReport r;
  try {
    const auto j = nlohmann::json::parse(text);
    r.mode = j.at("mode").get<std::string>();
    r.width = j.at("width").get<double>();
    r.lower = j.at("lower").get<double>();
    r.upper = j.at("upper").get<double>();
    for (const auto& e : j.at("events")) {
      r.events.push_back({e.at("t_a").get<double>(), e.at("t_b").get<double>(),
                          e.at("leash").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed morphing JSON: ") + e.what());
  }
  return r;
}

/// Rebuilds the morphing the report was made from.
inline Morphing morphing_from_report(const MorphingReport& r, const Curve& a, const Curve& b) {
  std::vector<ParamPoint> pts;
  for (const auto& e : r.events) pts.push_back({e.t_a, e.t_b});
  return Morphing(a, b, std::move(pts));
}

/// SVG 1.1 drawing of both curves (first two coordinates) and a leash at
/// every morphing vertex.
inline void write_svg(std::ostream& out, const Morphing& m) {
  const Curve& a = m.a();
  const Curve& b = m.b();
  auto xy = [](const Curve& c, std::span<const double> v) {
    return std::pair{v[0], c.dim() > 1 ? v[1] : 0.0};
  };
  double x0 = INFINITY, y0 = INFINITY, x1 = -INFINITY, y1 = -INFINITY;
  for (const Curve* c : {&a, &b}) {
    for (std::size_t i = 0; i < c->size(); ++i) {
      const auto [x, y] = xy(*c, c->vertex(i));
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  const double size = 800.0, pad = 20.0, k = (size - 2 * pad) / span;
  const double height = (y1 - y0) * k + 2 * pad;
  // SVG y grows downwards.
  auto px = [&](double x) { return format_number(pad + (x - x0) * k); };
  auto py = [&](double y) { return format_number(height - pad - (y - y0) * k); };
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << format_number(size)
      << "\" height=\"" << format_number(height) << "\">\n";
  out << "<g stroke=\"#999999\" stroke-width=\"0.5\">\n";
  std::vector<double> pa(a.dim()), pb(b.dim());
  for (const auto& p : m.points()) {
    a.point_at_into(p.x, pa);
    b.point_at_into(p.y, pb);
    const auto [ax, ay] = xy(a, pa);
    const auto [bx, by] = xy(b, pb);
    out << "<line x1=\"" << px(ax) << "\" y1=\"" << py(ay) << "\" x2=\"" << px(bx) << "\" y2=\""
        << py(by) << "\"/>\n";
  }
  out << "</g>\n";
  for (const auto& [c, color] : {std::pair{&a, "#1f77b4"}, std::pair{&b, "#d62728"}}) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < c->size(); ++i) {
      const auto [x, y] = xy(*c, c->vertex(i));
      out << (i ? " " : "") << px(x) << "," << py(y);
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

namespace detail {

inline void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xff);
  out.write(b, 8);
}

inline std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("truncated profile data");
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(b[k]) << (8 * k);
  return v;
}

}  // namespace detail

/// Binary profile layout: uint64 count, then count IEEE-754 doubles, all
/// little-endian.
inline void write_profile(std::ostream& out, const SimplificationProfile& p) {
  detail::put_u64(out, p.values.size());
  for (double v : p.values) detail::put_u64(out, std::bit_cast<std::uint64_t>(v));
}

inline SimplificationProfile read_profile(std::istream& in, const Curve& source) {
  const std::uint64_t n = detail::get_u64(in);
  if (n != source.size()) throw std::runtime_error("profile does not match its curve");
  SimplificationProfile p{std::vector<double>(n), source};
  for (auto& v : p.values) v = std::bit_cast<double>(detail::get_u64(in));
  return p;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace frechet_ve
