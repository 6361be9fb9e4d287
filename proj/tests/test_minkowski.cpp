#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "toric/minkowski.hpp"

using namespace toric;

namespace {

LatticePolygon poly(std::initializer_list<LatticePoint> pts) {
  return convex_hull(std::vector<LatticePoint>(pts));
}

LatticePolygon sum_all(const std::vector<LatticePolygon>& parts) {
  REQUIRE_FALSE(parts.empty());
  LatticePolygon acc = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) acc = minkowski_sum(acc, parts[i]);
  return acc;
}

// hand-derived decomposition lengths for the whole catalog
const std::map<std::string, int> kCatalogL = {
    {"P3_1", 2},  {"P3_2", 1},  {"P4_1", 3},  {"P4_2", 1},  {"P4_3", 2},
    {"P4_4", 1},  {"P5_1", 4},  {"P5_2", 1},  {"P5_3", 2},  {"P5_4", 1},
    {"P5_5", 1},  {"P5_6", 1},  {"P5_7", 2},  {"P6_1", 5},  {"P6_2", 1},
    {"P6_3", 2},  {"P6_4", 1},  {"P6_5", 1},  {"P6_6", 1},  {"P6_7", 2},
    {"P6_8", 1},  {"P6_9", 1},  {"P6_10", 1}, {"P6_11", 1}, {"P6_12", 2},
    {"P6_13", 2}, {"P6_14", 3},
};

const std::map<std::string, int> kCatalogFullL = {
    {"P3_1", 2},  {"P3_2", 1},  {"P4_1", 3},  {"P4_2", 2},  {"P4_3", 2},
    {"P4_4", 1},  {"P5_1", 4},  {"P5_2", 3},  {"P5_3", 2},  {"P5_4", 2},
    {"P5_5", 2},  {"P5_6", 2},  {"P5_7", 2},  {"P6_1", 5},  {"P6_2", 4},
    {"P6_3", 3},  {"P6_4", 3},  {"P6_5", 3},  {"P6_6", 3},  {"P6_7", 3},
    {"P6_8", 3},  {"P6_9", 2},  {"P6_10", 2}, {"P6_11", 2}, {"P6_12", 2},
    {"P6_13", 2}, {"P6_14", 3},
};

std::mt19937 rng(271828);

LatticePolygon random_small_polygon(int span) {
  std::uniform_int_distribution<std::int64_t> coord(0, span);
  std::uniform_int_distribution<int> count(3, 6);
  for (;;) {
    std::vector<LatticePoint> pts;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
    LatticePolygon P = convex_hull(std::move(pts));
    if (P.dim() >= 1) return P;
  }
}

}  // namespace

TEST_CASE("edge profiles close up and reconstruct", "[minkowski]") {
  for (const auto& [name, P] : fixtures::catalog()) {
    INFO(name);
    const EdgeProfile prof = edge_profile(P);
    std::int64_t sx = 0, sy = 0;
    for (const auto& [d, g] : prof) {
      REQUIRE(g >= 1);
      REQUIRE(std::gcd(std::abs(d.x), std::abs(d.y)) == 1);
      sx += g * d.x;
      sy += g * d.y;
    }
    REQUIRE(sx == 0);
    REQUIRE(sy == 0);
    if (P.dim() >= 1) {
      // reconstruction gives back the polygon up to translation
      const LatticePolygon R = profile_polygon(prof);
      REQUIRE(lattice_equivalent(R, P).has_value());
      REQUIRE(edge_profile(R) == prof);
    }
  }
  REQUIRE(edge_profile(poly({{3, 4}})).empty());
}

TEST_CASE("minkowski length of basic shapes", "[minkowski]") {
  CHECK(minkowski_length(poly({{0, 0}, {5, 0}})).l == 5);
  CHECK(minkowski_length(poly({{0, 0}, {1, 0}})).l == 1);
  CHECK(minkowski_length(poly({{2, 3}, {3, 5}})).l == 1);
  CHECK(minkowski_length(poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}})).l == 2);
  CHECK(minkowski_length(poly({{0, 0}, {3, 0}, {0, 3}, {3, 3}})).l == 6);
  CHECK_THROWS_AS(minkowski_length(poly({{7, -2}})), std::invalid_argument);

  // segments: length equals lattice point count minus one
  for (int g = 1; g <= 7; ++g) {
    const LatticePolygon S = poly({{0, 0}, {2 * g, g}});
    REQUIRE(lattice_points(S).size() == static_cast<size_t>(g + 1));
    CHECK(minkowski_length(S).l == g);
  }
}

TEST_CASE("catalog minkowski lengths match frozen values", "[minkowski]") {
  for (const auto& [name, P] : fixtures::catalog()) {
    INFO(name);
    const MinkowskiLength r = minkowski_length(P);
    REQUIRE(r.l == kCatalogL.at(name));
    REQUIRE(r.witness.size() == static_cast<size_t>(r.l));
    for (const auto& part : r.witness) REQUIRE(part.dim() >= 1);
    REQUIRE(sum_all(r.witness) == P);
  }
}

TEST_CASE("full minkowski length on the catalog", "[minkowski]") {
  for (const auto& [name, P] : fixtures::catalog()) {
    INFO(name);
    const FullMinkowskiLength r = full_minkowski_length(P);
    REQUIRE(r.L == kCatalogFullL.at(name));
    REQUIRE(r.L >= kCatalogL.at(name));
    // witness subpolytope attains the maximum and lies inside P
    REQUIRE(minkowski_length(r.witness_subpolytope).l == r.L);
    const auto inside = lattice_points(P);
    for (const auto& v : r.witness_subpolytope.vertices)
      REQUIRE(std::find(inside.begin(), inside.end(), v) != inside.end());
    // the exceptional summand occurs only for the exceptional triangle class
    REQUIRE(r.exceptional_possible == (name == "P4_4"));
  }
}

TEST_CASE("exceptional summand detection", "[minkowski]") {
  const LatticePolygon T0 = exceptional_triangle();
  REQUIRE(pick_accounting(T0) == PickAccounting{4, 3, 3, 1});
  CHECK(full_minkowski_length(T0).exceptional_possible);
  CHECK(full_minkowski_length(T0).L == 1);

  // adding a primitive segment keeps an exceptional summand in some maximal
  // decomposition of the (unique) maximal subpolytope
  const LatticePolygon Tplus = minkowski_sum(T0, poly({{0, 0}, {1, 0}}));
  const FullMinkowskiLength rp = full_minkowski_length(Tplus);
  CHECK(rp.L == 2);
  CHECK(rp.exceptional_possible);

  // a big square decomposes into segments only
  const FullMinkowskiLength sq = full_minkowski_length(
      poly({{0, 0}, {3, 0}, {3, 3}, {0, 3}}));
  CHECK(sq.L == 6);
  CHECK_FALSE(sq.exceptional_possible);

  CHECK_THROWS_AS(full_minkowski_length(poly({{1, 1}})),
                  std::invalid_argument);
}

TEST_CASE("length-one polygons have no proper decomposition", "[minkowski]") {
  for (const auto& [name, P] : fixtures::catalog()) {
    if (kCatalogL.at(name) != 1) continue;
    INFO(name);
    const MinkowskiLength r = minkowski_length(P);
    REQUIRE(r.witness.size() == 1);
    REQUIRE(lattice_equivalent(r.witness[0], P).has_value());
  }
}

TEST_CASE("alphabet fast path agrees with the generic search", "[minkowski]") {
  for (const auto& [name, P] : fixtures::catalog()) {
    INFO(name);
    REQUIRE(full_minkowski_length_fast(P) == full_minkowski_length(P).L);
  }
  int checked = 0;
  while (checked < 200) {
    const LatticePolygon P = random_small_polygon(3);
    if (lattice_points(P).size() > 14) continue;
    INFO("vertices " << P.vertices.size() << " first (" << P.vertices[0].x
                     << "," << P.vertices[0].y << ")");
    REQUIRE(full_minkowski_length_fast(P) == full_minkowski_length(P).L);
    ++checked;
  }
}

TEST_CASE("full length dominates length on random polygons", "[minkowski]") {
  for (int it = 0; it < 60; ++it) {
    const LatticePolygon P = random_small_polygon(3);
    if (lattice_points(P).size() > 14) continue;
    const int l = minkowski_length(P).l;
    const FullMinkowskiLength f = full_minkowski_length(P);
    REQUIRE(l >= 1);
    REQUIRE(f.L >= l);
    REQUIRE(sum_all(minkowski_length(P).witness) == P);
  }
}
