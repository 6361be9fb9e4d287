#include <atomic>
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "fixtures.hpp"
#include "toric/code.hpp"

using namespace toric;

namespace {

// frozen reference distributions for every catalog class over F_7, F_8, F_9
const nlohmann::json& reference_enumerators() {
  static const nlohmann::json data = [] {
    std::ifstream in(std::string(TORIC_TEST_DATA_DIR) +
                     "/enumerators_f7f8f9.json");
    REQUIRE(in.good());
    return nlohmann::json::parse(in);
  }();
  return data;
}

std::vector<std::pair<std::int64_t, std::uint64_t>> nonzero_terms(
    const WeightEnumerator& W) {
  std::vector<std::pair<std::int64_t, std::uint64_t>> out;
  for (size_t w = 0; w < W.counts.size(); ++w)
    if (W.counts[w] != 0) out.emplace_back(w, W.counts[w]);
  return out;
}

const FieldSpec& field(int q) {
  static std::map<int, FieldSpec> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, make_field_q(q)).first;
  return it->second;
}

}  // namespace

TEST_CASE("code construction", "[code]") {
  SECTION("dimensions and length") {
    const auto C = build_code(field(7), fixtures::polygon("P6_3"));
    CHECK(C.k == 6);
    CHECK(C.n == 36);
    const auto C8 = build_code(field(8), fixtures::polygon("P6_1"));
    CHECK(C8.k == 6);
    CHECK(C8.n == 49);
  }
  SECTION("generator rows evaluate the monomials") {
    const auto& F = field(8);
    const auto C = build_code(F, fixtures::polygon("P6_1"));
    // P6_1 is the segment (0,0)..(5,0); its last exponent is (5,0)
    REQUIRE(C.exponents.back() == LatticePoint{5, 0});
    const std::uint8_t* r = C.row(C.k - 1);
    const auto pts = torus_points(F);
    for (int j = 0; j < C.n; ++j) {
      FieldElement v = 1;
      for (int e = 0; e < 5; ++e) v = F.mul(v, pts[j].first);
      CHECK(r[j] == v);
    }
  }
  SECTION("negative exponents go through inverses") {
    const auto& F = field(7);
    const auto C = build_code(F, fixtures::polygon("P6_4"));
    REQUIRE(C.exponents.front() == LatticePoint{0, -1});
    const std::uint8_t* r = C.row(0);
    const auto pts = torus_points(F);
    for (int j = 0; j < C.n; ++j) CHECK(r[j] == F.inv(pts[j].second));
  }
  SECTION("rejections") {
    const auto wide = convex_hull({{0, 0}, {7, 0}, {0, 1}});
    CHECK_THROWS_AS(build_code(field(7), wide), std::invalid_argument);
    const auto shifted = convex_hull({{-6, 0}, {-6, 1}, {-5, 0}});
    CHECK_THROWS_AS(build_code(field(7), shifted), std::invalid_argument);
    CHECK_THROWS_AS(build_code(make_field_q(4), fixtures::polygon("P3_1")),
                    std::invalid_argument);
  }
}

TEST_CASE("encoding", "[code]") {
  const auto& F = field(7);
  const auto C = build_code(F, fixtures::polygon("P6_4"));

  SECTION("zero and unit messages") {
    const auto zero = encode(C, std::vector<FieldElement>(C.k, 0));
    CHECK(weight(zero) == 0);
    std::vector<FieldElement> e1(C.k, 0);
    e1[0] = 1;
    const auto cw = encode(C, e1);
    for (int j = 0; j < C.n; ++j) CHECK(cw[j] == C.row(0)[j]);
    CHECK(weight(cw) == C.n);  // a monomial never vanishes on the torus
  }
  SECTION("a cubic with three roots has 3(q-1) zeros") {
    // f = (x-1)(x-2)(x-3) = x^3 + x^2 + 4x + 1 over F_7
    std::vector<FieldElement> msg(C.k, 0);
    auto coord = [&](std::int64_t x, std::int64_t y) {
      for (int i = 0; i < C.k; ++i)
        if (C.exponents[i] == LatticePoint{x, y}) return i;
      FAIL("missing exponent");
      return -1;
    };
    msg[coord(0, 0)] = 1;
    msg[coord(1, 0)] = 4;
    msg[coord(2, 0)] = 1;
    msg[coord(3, 0)] = 1;
    CHECK(weight(encode(C, msg)) == 36 - 18);
  }
  SECTION("rejections") {
    CHECK_THROWS_AS(encode(C, std::vector<FieldElement>(C.k - 1, 0)),
                    std::invalid_argument);
    std::vector<FieldElement> bad(C.k, 0);
    bad[2] = 9;
    CHECK_THROWS_AS(encode(C, bad), std::invalid_argument);
  }
}

TEST_CASE("weight distributions match the frozen references", "[code]") {
  const auto& ref = reference_enumerators();
  for (const auto& [name, poly] : fixtures::catalog()) {
    if (name.rfind("P6_", 0) != 0) continue;
    for (int q : {7, 8, 9}) {
      INFO(name << " over F_" << q);
      const auto C = build_code(field(q), poly);
      const auto W = weight_enumerator(C, EnumMode::projective, 1);
      const auto& expect = ref.at(name).at(std::to_string(q));
      const auto got = nonzero_terms(W);
      REQUIRE(got.size() == expect.size());
      for (size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].first == expect[i][0].get<std::int64_t>());
        CHECK(got[i].second == expect[i][1].get<std::uint64_t>());
      }
    }
  }
}

TEST_CASE("full and projective modes agree", "[code]") {
  for (const auto& [name, poly] : fixtures::catalog()) {
    if (name.rfind("P6_", 0) != 0) continue;
    for (int q : {7, 8, 9}) {
      INFO(name << " over F_" << q);
      const auto C = build_code(field(q), poly);
      CHECK(weight_enumerator(C, EnumMode::full, 1).counts ==
            weight_enumerator(C, EnumMode::projective, 1).counts);
    }
  }
}

TEST_CASE("distribution invariants", "[code]") {
  const auto C = build_code(field(9), fixtures::polygon("P6_7"));
  const auto W = weight_enumerator(C);
  CHECK(W.counts[0] == 1);
  std::uint64_t sum = 0;
  for (auto c : W.counts) sum += c;
  CHECK(sum == 531441);  // 9^6
  for (size_t w = 1; w < W.counts.size(); ++w) CHECK(W.counts[w] % 8 == 0);
}

TEST_CASE("result does not depend on the modulus", "[code]") {
  const auto F8a = make_field(2, 3, {1, 1, 0, 1});
  const auto F8b = make_field(2, 3, {1, 0, 1, 1});
  const auto F9a = make_field(3, 2, {1, 0, 1});
  const auto F9b = make_field(3, 2, {2, 1, 1});
  for (const std::string name : {"P6_4", "P6_10", "P5_5"}) {
    const auto& poly = fixtures::polygon(name);
    CHECK(weight_enumerator(build_code(F8a, poly)).counts ==
          weight_enumerator(build_code(F8b, poly)).counts);
    CHECK(weight_enumerator(build_code(F9a, poly)).counts ==
          weight_enumerator(build_code(F9b, poly)).counts);
  }
}

TEST_CASE("torus substitution leaves the distribution unchanged", "[code]") {
  // f(x, y) -> f(ax, by) permutes evaluation points, i.e. generator columns
  const auto& F = field(7);
  auto C = build_code(F, fixtures::polygon("P6_7"));
  const auto base = weight_enumerator(C).counts;
  const int m = F.q - 1;
  for (auto [sa, sb] : {std::pair{2, 3}, std::pair{5, 1}}) {
    ToricCode P = C;
    for (int i = 0; i < C.k; ++i)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          P.generator[static_cast<size_t>(i) * C.n + a * m + b] =
              C.row(i)[((a + sa) % m) * m + (b + sb) % m];
    CHECK(weight_enumerator(P).counts == base);
  }
}

TEST_CASE("worker count does not change the histogram", "[code]") {
  const auto C = build_code(field(9), fixtures::polygon("P6_9"));
  const auto one = weight_enumerator(C, EnumMode::projective, 1);
  CHECK(weight_enumerator(C, EnumMode::projective, 3).counts == one.counts);
  const auto full1 = weight_enumerator(C, EnumMode::full, 1);
  CHECK(weight_enumerator(C, EnumMode::full, 2).counts == full1.counts);
}

TEST_CASE("checkpoint and resume", "[code]") {
  const auto C = build_code(field(8), fixtures::polygon("P6_12"));
  const auto direct = weight_enumerator(C);

  SECTION("resuming a mid-run snapshot completes correctly") {
    std::vector<EnumCheckpoint> seen;
    EnumOptions opt;
    opt.checkpoint_interval_s = 0.0;  // snapshot after every chunk
    opt.on_checkpoint = [&](const EnumCheckpoint& cp) { seen.push_back(cp); };
    weight_enumerator(C, opt);
    REQUIRE(seen.size() > 10);
    const auto& mid = seen[seen.size() / 2];
    CHECK(mid.done.size() < mid.total_chunks);

    EnumOptions resume;
    resume.resume = mid;
    CHECK(weight_enumerator(C, resume).counts == direct.counts);
  }
  SECTION("cancelling carries a usable snapshot") {
    std::atomic<int> polls{0};
    EnumOptions opt;
    opt.should_cancel = [&] { return ++polls > 12; };
    EnumCheckpoint cp;
    try {
      weight_enumerator(C, opt);
      FAIL("expected cancellation");
    } catch (const EnumCancelled& e) {
      cp = e.checkpoint;
    }
    CHECK(cp.total_chunks > 0);
    EnumOptions resume;
    resume.resume = cp;
    CHECK(weight_enumerator(C, resume).counts == direct.counts);
  }
  SECTION("a snapshot from another run is rejected") {
    EnumOptions opt;
    opt.checkpoint_interval_s = 0.0;
    std::optional<EnumCheckpoint> first;
    opt.on_checkpoint = [&](const EnumCheckpoint& cp) {
      if (!first) first = cp;
    };
    weight_enumerator(C, opt);
    REQUIRE(first.has_value());

    EnumOptions wrong_mode;
    wrong_mode.mode = EnumMode::full;
    wrong_mode.resume = *first;
    CHECK_THROWS_AS(weight_enumerator(C, wrong_mode), std::invalid_argument);

    const auto other = build_code(field(8), fixtures::polygon("P6_13"));
    EnumOptions wrong_code;
    wrong_code.resume = *first;
    CHECK_THROWS_AS(weight_enumerator(other, wrong_code),
                    std::invalid_argument);
  }
}

TEST_CASE("minimum distance", "[code]") {
  CHECK(min_distance(build_code(field(7), fixtures::polygon("P6_14"))) == 20);
  CHECK(min_distance(build_code(field(7), fixtures::polygon("P6_13"))) == 24);
  CHECK(min_distance(build_code(field(8), fixtures::polygon("P6_10"))) == 28);

  SECTION("equals the first nonzero weight of the distribution") {
    for (const auto& [name, poly] : fixtures::catalog()) {
      if (name.rfind("P6_", 0) != 0) continue;
      const auto C = build_code(field(7), poly);
      INFO(name);
      CHECK(min_distance(C) ==
            weight_enumerator(C).min_positive_weight());
    }
  }
}
