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

// Library walkthrough: distances, morphings and simplification.
//   frechet_ve_basic_usage [curve_a curve_b]

#include <iostream>

#include "frechet_ve.hpp"

int main(int argc, char** argv) {
  using namespace frechet_ve;
  Curve a = Curve::from_coords({0, 0, 1, 1, 2, 0, 3, 1, 4, 0}, 2);
  Curve b = Curve::from_coords({0, 0.5, 4, 0.5}, 2);
  if (argc == 3) {
    a = load_curve(argv[1]);
    b = load_curve(argv[2]);
  }

  const auto ve = ve_frechet(a, b);
  std::cout << "VE lower bound: " << ve.distance << " (explored " << ve.explored << " portals)\n";

  const auto exact = frechet_exact(a, b);
  std::cout << "exact: " << exact.value() << " in [" << exact.lower << ", " << exact.upper << "], "
            << exact.rounds << " refinement rounds\n";

  const auto approx = frechet_approx(a, b, 1.1);
  std::cout << "1.1-approximation: [" << approx.lower << ", " << approx.upper << "]\n";

  const auto sweep = sweep_distance(a, b);
  std::cout << "sweep: " << sweep.value << " (lower bound " << cdtw_lower_bound(a, b) << ")\n";

  const double delta = 0.5 * exact.value() + 1e-9;
  const auto profile = comp_profile(a);
  const auto s = combined_simplify(profile, delta);
  std::cout << "simplified to " << s.curve.size() << " of " << a.size() << " vertices at delta " << delta << "\n";

  const bool below = decide(a, b, 1.0) == Verdict::Below;
  std::cout << "distance <= 1.0: " << (below ? "yes" : "no") << "\n";

  std::cout << to_json(make_report("exact", exact.morphing, exact.lower, exact.upper));
  return 0;
}
