#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toric/lattice.hpp"

namespace fixtures {

// The classification catalog of polygons with 3..6 lattice points, keyed by
// the conventional class names used throughout the shipped tables.
inline const std::vector<std::pair<std::string, toric::LatticePolygon>>&
catalog() {
  using toric::convex_hull;
  static const std::vector<std::pair<std::string, toric::LatticePolygon>>
      entries = {
          {"P3_1", convex_hull({{0, 0}, {2, 0}})},
          {"P3_2", convex_hull({{0, 0}, {1, 0}, {0, 1}})},
          {"P4_1", convex_hull({{0, 0}, {3, 0}})},
          {"P4_2", convex_hull({{0, 0}, {2, 0}, {0, 1}})},
          {"P4_3", convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}})},
          {"P4_4", convex_hull({{-1, -1}, {1, 0}, {0, 1}})},
          {"P5_1", convex_hull({{0, 0}, {4, 0}})},
          {"P5_2", convex_hull({{0, 0}, {3, 0}, {0, 1}})},
          {"P5_3", convex_hull({{0, 0}, {2, 0}, {1, 1}, {0, 1}})},
          {"P5_4", convex_hull({{0, 0}, {1, 0}, {2, 2}, {0, 1}})},
          {"P5_5", convex_hull({{0, -1}, {2, 0}, {0, 1}})},
          {"P5_6", convex_hull({{-1, -1}, {1, 0}, {0, 2}})},
          {"P5_7", convex_hull({{1, 0}, {0, 1}, {-1, 0}, {0, -1}})},
          {"P6_1", convex_hull({{0, 0}, {5, 0}})},
          {"P6_2", convex_hull({{0, 0}, {4, 0}, {0, 1}})},
          {"P6_3", convex_hull({{0, 0}, {3, 0}, {1, 1}, {0, 1}})},
          {"P6_4", convex_hull({{0, -1}, {3, 0}, {0, 1}})},
          {"P6_5", convex_hull({{-1, -1}, {3, 0}, {0, 1}})},
          {"P6_6", convex_hull({{0, 0}, {1, 0}, {3, 3}, {0, 1}})},
          {"P6_7", convex_hull({{0, 0}, {3, -1}, {3, 0}, {0, 1}})},
          {"P6_8", convex_hull({{-1, 0}, {0, -1}, {2, 0}, {0, 1}})},
          {"P6_9", convex_hull({{0, -1}, {2, 0}, {1, 1}, {0, 1}})},
          {"P6_10", convex_hull({{0, -1}, {2, 0}, {-1, 2}})},
          {"P6_11", convex_hull({{-1, -1}, {1, 0}, {1, 1}, {0, 2}})},
          {"P6_12", convex_hull({{0, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 0}})},
          {"P6_13", convex_hull({{0, 0}, {2, 0}, {0, 2}})},
          {"P6_14", convex_hull({{0, 0}, {2, 0}, {2, 1}, {0, 1}})},
      };
  return entries;
}

inline const toric::LatticePolygon& polygon(const std::string& name) {
  for (const auto& [n, p] : catalog())
    if (n == name) return p;
  throw std::out_of_range("unknown class " + name);
}

inline toric::UnimodularAffineMap random_unimodular(std::mt19937& rng) {
  using toric::UnimodularAffineMap;
  std::uniform_int_distribution<std::int64_t> shear(-3, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::int64_t> trans(-7, 7);
  UnimodularAffineMap m;
  for (int round = 0; round < 3; ++round) {
    UnimodularAffineMap s;
    if (coin(rng))
      s.m12 = shear(rng);
    else
      s.m21 = shear(rng);
    m = compose(s, m);
    if (coin(rng)) {
      UnimodularAffineMap sw;
      sw.m11 = 0;
      sw.m12 = 1;
      sw.m21 = 1;
      sw.m22 = 0;
      m = compose(sw, m);
    }
  }
  m.t = {trans(rng), trans(rng)};
  return m;
}

}  // namespace fixtures
