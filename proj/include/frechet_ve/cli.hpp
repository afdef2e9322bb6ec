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

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "discrete_frechet.hpp"
#include "frechet_driver.hpp"
#include "io.hpp"
#include "sweep.hpp"
#include "ve_frechet.hpp"

namespace frechet_ve::cli {

enum ExitCode : int { kOk = 0, kCapped = 1, kInputError = 2 };

struct QueryRecord {
  std::string path_a;
  std::string path_b;
  double threshold = 0.0;
};

/// `path_a path_b threshold` per line; blank and '#' lines skipped.
/// Relative paths are taken relative to `base`.
inline std::vector<QueryRecord> parse_queries(std::istream& in, const std::filesystem::path& base,
                                              const std::string& source = "<queries>") {
  std::vector<QueryRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    QueryRecord q;
    std::string th, extra;
    if (!(ss >> q.path_a >> q.path_b >> th) || (ss >> extra)) {
      throw ParseError(source, lineno, "expected 'path_a path_b threshold'");
    }
    double t = 0.0;
    const auto [ptr, ec] = std::from_chars(th.data(), th.data() + th.size(), t);
    if (ec != std::errc() || ptr != th.data() + th.size() || !std::isfinite(t)) {
      throw ParseError(source, lineno, "invalid threshold '" + th + "'");
    }
    q.threshold = t;
    for (auto* p : {&q.path_a, &q.path_b}) {
      if (std::filesystem::path(*p).is_relative()) *p = (base / *p).lexically_normal().string();
    }
    out.push_back(std::move(q));
  }
  return out;
}

inline const char* status_name(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::Exact: return "exact";
    case CertificateStatus::Approx: return "approx";
    case CertificateStatus::IterationCapped: return "capped";
  }
  return "?";
}

struct DistanceReport {
  std::string mode;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::string status;
  std::size_t rounds = 0;
  std::size_t explored = 0;
  double time_ms = 0.0;
  Morphing morphing;
  bool capped = false;
};

namespace detail {

inline std::vector<Point> vertices(const Curve& c) { return c.vertices(); }

inline DistanceReport compute(const std::string& mode, const Curve& a, const Curve& b, double ratio,
                              std::size_t max_rounds) {
  const auto t0 = std::chrono::steady_clock::now();
  DistanceReport r;
  r.mode = mode;
  ExactOptions ex{max_rounds, 1e-10};
  if (mode == "exact" || mode == "approx") {
    auto c = mode == "exact" ? frechet_exact(a, b, ex) : frechet_approx(a, b, ratio, {64, ex});
    r.value = c.value();
    r.lower = c.lower;
    r.upper = c.upper;
    r.status = status_name(c.status);
    r.rounds = c.rounds;
    r.explored = c.explored;
    r.morphing = c.morphing;
    r.capped = c.status == CertificateStatus::IterationCapped;
  } else if (mode == "ve") {
    auto v = ve_frechet(a, b);
    r.value = r.lower = v.distance;
    r.upper = width(monotonize(v.morphing).cell_aligned());
    r.status = "lower-bound";
    r.explored = v.explored;
    r.morphing = v.morphing;
  } else if (mode == "sweep") {
    auto s = sweep_distance(a, b, std::min<std::size_t>(max_rounds, 10));
    r.value = r.upper = s.value;
    r.lower = cdtw_lower_bound(a, b);
    r.status = s.capped ? "capped" : "upper-bound";
    r.rounds = s.refinement_rounds;
    r.morphing = s.morphing;
    r.capped = s.capped;
  } else if (mode == "discrete" || mode == "retractable-discrete") {
    const auto p = vertices(a), q = vertices(b);
    auto d = mode == "discrete" ? discrete_frechet_dp(p, q) : retractable_discrete_frechet(p, q);
    r.value = r.lower = r.upper = d.distance;
    r.status = "exact";
    r.explored = d.explored;
    std::vector<ParamPoint> pts;
    for (auto [i, j] : d.morphing.steps) pts.push_back({a.prefix(i), b.prefix(j)});
    if (pts.size() == 1) pts.push_back(pts.front());
    r.morphing = Morphing(a, b, std::move(pts));
  } else {
    throw std::invalid_argument("unknown mode '" + mode + "'");
  }
  r.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::string dist_json(const DistanceReport& r) {
  std::string s = "{\"mode\": " + nlohmann::json(r.mode).dump();
  s += ", \"value\": " + format_number(r.value);
  s += ", \"lower\": " + format_number(r.lower);
  s += ", \"upper\": " + format_number(r.upper);
  s += ", \"status\": \"" + r.status + "\"";
  s += ", \"rounds\": " + std::to_string(r.rounds);
  s += ", \"explored\": " + std::to_string(r.explored);
  s += ", \"time_ms\": " + format_number(r.time_ms) + "}\n";
  return s;
}

// Loads a curve and reports dropped duplicates on `err`.
inline Curve load_reporting(const std::string& path, std::ostream& err) {
  auto c = load_curve(path);
  if (c.dropped_duplicates() > 0) {
    err << "warning: " << path << ": dropped " << c.dropped_duplicates()
        << " duplicate vertices\n";
  }
  return c;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

struct DecideSettings {
  std::string cache_dir;  // empty: no on-disk cache
  std::size_t jobs = 1;
  std::size_t max_rounds = 100;
};

/// Verdicts for a batch of queries, in input order. Curves and their
/// profiles are loaded once per distinct path.
inline std::vector<Verdict> decide_batch(const std::vector<QueryRecord>& queries,
                                         const DecideSettings& settings, std::ostream& err) {
  struct Entry {
    Curve curve;
    SimplificationProfile profile;
  };
  std::map<std::string, std::shared_ptr<const Entry>> curves;
  for (const auto& q : queries) {
    for (const auto& path : {q.path_a, q.path_b}) {
      if (curves.contains(path)) continue;
      const std::string text = detail::read_file(path);
      std::istringstream in(text);
      Curve c = parse_curve(in, path);
      if (c.dropped_duplicates() > 0) {
        err << "warning: " << path << ": dropped " << c.dropped_duplicates()
            << " duplicate vertices\n";
      }
      std::optional<SimplificationProfile> prof;
      std::filesystem::path file;
      if (!settings.cache_dir.empty()) {
        char name[32];
        std::snprintf(name, sizeof name, "%016llx.profile",
                      static_cast<unsigned long long>(fnv1a(text)));
        file = std::filesystem::path(settings.cache_dir) / name;
        std::ifstream cached(file, std::ios::binary);
        if (cached) {
          try {
            prof = read_profile(cached, c);
          } catch (const std::exception&) {
            prof.reset();
          }
        }
      }
      if (!prof) {
        prof = comp_profile(c);
        if (!file.empty()) {
          std::filesystem::create_directories(settings.cache_dir);
          std::ofstream outf(file, std::ios::binary);
          write_profile(outf, *prof);
        }
      }
      curves.emplace(path, std::make_shared<const Entry>(Entry{c, std::move(*prof)}));
    }
  }
  std::vector<Verdict> verdicts(queries.size(), Verdict::Above);
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    DecideOptions opts;
    opts.exact.max_rounds = settings.max_rounds;
    for (std::size_t k = next++; k < queries.size(); k = next++) {
      try {
        const auto& ea = *curves.at(queries[k].path_a);
        const auto& eb = *curves.at(queries[k].path_b);
        verdicts[k] = decide(ea.curve, eb.curve, queries[k].threshold, &ea.profile, &eb.profile, opts);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(settings.jobs, queries.size()));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return verdicts;
}

/// Entry point shared by the executable and the tests; args exclude the
/// program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frechet distance toolkit for polygonal curves", "frechet-ve"};
  app.require_subcommand(1);

  std::string path_a, path_b, mode = "exact", query_file, svg_path, cache_dir;
  double ratio = 4.0;
  std::size_t max_rounds = 100, jobs = 1;
  bool as_json = false, allow_approx = false;
  const std::vector<std::string> modes{"ve", "exact", "approx", "sweep", "discrete",
                                       "retractable-discrete"};

  auto* dist = app.add_subcommand("dist", "Distance between two curves");
  dist->add_option("curve_a", path_a, "First curve file")->required();
  dist->add_option("curve_b", path_b, "Second curve file")->required();
  dist->add_option("--mode", mode, "Algorithm")->check(CLI::IsMember(modes));
  dist->add_option("--ratio", ratio, "Target upper/lower ratio for approx")->check(CLI::Range(1.0 + 1e-12, 1e300));
  dist->add_option("--max-rounds", max_rounds, "Refinement round cap");
  dist->add_flag("--json", as_json, "Print a JSON object");
  dist->add_flag("--allow-approx", allow_approx, "Exit 0 even when the round cap was hit");

  auto* dec = app.add_subcommand("decide", "Threshold queries from a file");
  dec->add_option("queries", query_file, "Lines of 'path_a path_b threshold'")->required();
  dec->add_option("--cache", cache_dir, "Directory for cached simplification profiles");
  dec->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  dec->add_option("--max-rounds", max_rounds, "Refinement round cap");

  auto* mor = app.add_subcommand("morphing", "Export a morphing as JSON (and SVG)");
  mor->add_option("curve_a", path_a, "First curve file")->required();
  mor->add_option("curve_b", path_b, "Second curve file")->required();
  mor->add_option("--mode", mode, "Algorithm")->check(CLI::IsMember(modes));
  mor->add_option("--ratio", ratio, "Target upper/lower ratio for approx")->check(CLI::Range(1.0 + 1e-12, 1e300));
  mor->add_option("--max-rounds", max_rounds, "Refinement round cap");
  mor->add_option("--svg", svg_path, "Write an SVG drawing here");

  std::vector<std::string> argv_store{"frechet-ve"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (dist->parsed()) {
      const Curve a = detail::load_reporting(path_a, err);
      const Curve b = detail::load_reporting(path_b, err);
      frechet_ve::detail::require_same_dim(a.dim(), b.dim());
      const auto r = detail::compute(mode, a, b, ratio, max_rounds);
      if (as_json) {
        out << detail::dist_json(r);
      } else {
        out << "mode: " << r.mode << "\n"
            << "value: " << format_number(r.value) << "\n"
            << "bracket: [" << format_number(r.lower) << ", " << format_number(r.upper) << "]\n"
            << "status: " << r.status << "\n"
            << "rounds: " << r.rounds << "\n"
            << "explored: " << r.explored << "\n"
            << "time_ms: " << format_number(r.time_ms) << "\n";
      }
      return r.capped && !allow_approx ? kCapped : kOk;
    }
    if (dec->parsed()) {
      std::ifstream in(query_file);
      if (!in) throw std::runtime_error("cannot open " + query_file);
      const auto base = std::filesystem::path(query_file).parent_path();
      const auto queries = parse_queries(in, base, query_file);
      const auto verdicts = decide_batch(queries, {cache_dir, jobs, max_rounds}, err);
      for (auto v : verdicts) out << (v == Verdict::Below ? "BELOW" : "ABOVE") << "\n";
      return kOk;
    }
    const Curve a = detail::load_reporting(path_a, err);
    const Curve b = detail::load_reporting(path_b, err);
    frechet_ve::detail::require_same_dim(a.dim(), b.dim());
    const auto r = detail::compute(mode, a, b, ratio, max_rounds);
    const auto report = make_report(mode, r.morphing, r.lower, r.upper);
    out << to_json(report);
    if (!svg_path.empty()) {
      std::ofstream svg(svg_path);
      if (!svg) throw std::runtime_error("cannot write " + svg_path);
      write_svg(svg, r.morphing);
    }
    return r.capped ? kCapped : kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace frechet_ve::cli
