#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/minkowski.hpp"

namespace toric {

namespace invariants_detail {

inline std::uint64_t isqrt_u64(std::uint64_t v) {
  if (v == 0) return 0;
  auto sq = [](std::uint64_t x) { return static_cast<__int128>(x) * x; };
  std::uint64_t r =
      static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r > 0 && sq(r) > v) --r;
  while (sq(r + 1) <= v) ++r;
  return r;
}

// smallest integer >= 2g*sqrt(q), exactly
inline std::int64_t ceil_2g_sqrt_q(std::int64_t g, std::int64_t q) {
  const std::uint64_t rad = static_cast<std::uint64_t>(4 * g * g * q);
  const std::uint64_t s = isqrt_u64(rad);
  return static_cast<std::int64_t>(s * s == rad ? s : s + 1);
}

// exact test of 8q - c4^2 - K >= c4 * sqrt(c4^2 + M) over the integers
inline bool threshold_condition(std::int64_t q, std::int64_t c4,
                                std::int64_t K, std::int64_t M) {
  const std::int64_t lhs = 8 * q - c4 * c4 - K;
  const __int128 rhs_sq = static_cast<__int128>(c4) * c4 *
                          (static_cast<__int128>(c4) * c4 + M);
  if (c4 <= 0) {
    if (lhs >= 0) return true;
    // both sides nonpositive: lhs >= -|c4|s  <=>  lhs^2 <= c4^2 (c4^2+M)
    return static_cast<__int128>(lhs) * lhs <= rhs_sq;
  }
  if (lhs < 0) return false;
  return static_cast<__int128>(lhs) * lhs >= rhs_sq;
}

// smallest q >= floor_q from which the (monotone) threshold condition holds
inline std::int64_t bound_threshold(std::int64_t c4, std::int64_t K,
                                    std::int64_t M, std::int64_t floor_q) {
  std::int64_t lo = 2, hi = 2;
  while (!threshold_condition(hi, c4, K, M)) {
    if (hi > (std::int64_t{1} << 60)) throw std::logic_error("no threshold");
    hi *= 2;
  }
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (threshold_condition(mid, c4, K, M))
      hi = mid;
    else
      lo = mid + 1;
  }
  return std::max(floor_q, lo);
}

}  // namespace invariants_detail

// Minimum distance of the code on the full rectangle [0,k] x [0,l]:
// d = ((q-1)-k)((q-1)-l).
inline std::int64_t rect_distance(std::int64_t k, std::int64_t l,
                                  std::int64_t q) {
  if (k < 0 || l < 0 || k >= q - 1 || l >= q - 1)
    throw std::invalid_argument("rectangle sides must satisfy 0 <= k,l < q-1");
  return (q - 1 - k) * (q - 1 - l);
}

// Minimum distance for the right triangle with legs k and l:
// d = (q-1)^2 - max(k,l)(q-1).
inline std::int64_t triangle_distance(std::int64_t k, std::int64_t l,
                                      std::int64_t q) {
  const std::int64_t m = std::max(k, l);
  if (k < 0 || l < 0 || m > q - 2)
    throw std::invalid_argument("triangle does not fit the (q-1) box");
  return (q - 1) * (q - 1) - m * (q - 1);
}

struct BoundWithThreshold {
  std::int64_t value = 0;      // lower bound on the minimum distance
  std::int64_t threshold = 0;  // smallest q for which the bound is proven
  bool applicable = false;     // q >= threshold
};

struct MinkowskiBounds {
  BoundWithThreshold weak;
  std::optional<BoundWithThreshold> strong;  // absent if an exceptional
                                             // summand cannot be ruled out
  int L = 0;
};

// Distance lower bounds driven by the full Minkowski length L(P):
//   weak:   d >= (q-1)^2 - L(q-1) - 2 sqrt(q) + 1,
//           for q >= max(23, (c + sqrt(c^2 + 5/2))^2), c = A/2 - L + 9/4;
//   strong: d >= (q-1)^2 - L(q-1),
//           for q >= max(37, (c + sqrt(c^2 + 2))^2),  c = A/2 - L + 11/4,
//           available only when no maximal decomposition of a maximal
//           subpolytope contains an exceptional triangle.
// With c4 = 4c the threshold conditions become exact integer tests:
//   8q - c4^2 - 20 >= c4 sqrt(c4^2 + 40)   (weak)
//   8q - c4^2 - 16 >= c4 sqrt(c4^2 + 32)   (strong)
inline MinkowskiBounds minkowski_bounds(const LatticePolygon& P,
                                        std::int64_t q) {
  using namespace invariants_detail;
  if (P.dim() != 2)
    throw std::invalid_argument("minkowski_bounds needs a 2-D polygon");
  const FullMinkowskiLength fl = full_minkowski_length(P);
  const std::int64_t L = fl.L;
  const std::int64_t area2 = pick_accounting(P).area2;

  MinkowskiBounds out;
  out.L = fl.L;

  const std::int64_t c4w = area2 - 4 * L + 9;
  out.weak.threshold = bound_threshold(c4w, 20, 40, 23);
  out.weak.value = (q - 1) * (q - 1) - L * (q - 1) + 1 -
                   static_cast<std::int64_t>(isqrt_u64(
                       static_cast<std::uint64_t>(4 * q)));
  out.weak.applicable = q >= out.weak.threshold;

  if (!fl.exceptional_possible) {
    BoundWithThreshold strong;
    const std::int64_t c4s = area2 - 4 * L + 11;
    strong.threshold = bound_threshold(c4s, 16, 32, 37);
    strong.value = (q - 1) * (q - 1) - L * (q - 1);
    strong.applicable = q >= strong.threshold;
    out.strong = strong;
  }
  return out;
}

// Hasse-Weil interval for the number of F_q points of a genus-g curve:
// 1 + q - 2g sqrt(q) <= N <= 1 + q + 2g sqrt(q), rounded outward and
// clamped below at zero.
inline std::pair<std::int64_t, std::int64_t> hasse_weil_interval(
    std::int64_t g, std::int64_t q) {
  if (g < 0 || q < 2) throw std::invalid_argument("need g >= 0 and q >= 2");
  const std::int64_t spread = invariants_detail::ceil_2g_sqrt_q(g, q);
  return {std::max<std::int64_t>(0, 1 + q - spread), 1 + q + spread};
}

// Upper bound on the number of torus zeros of an absolutely irreducible f
// with Newton polygon P_f: floor(q + 1 + 2 I(P_f) sqrt(q)) where I counts
// interior lattice points.
inline std::int64_t zero_count_bound(const LatticePolygon& P_f,
                                     std::int64_t q) {
  const std::int64_t I =
      P_f.dim() == 2 ? pick_accounting(P_f).interior : 0;
  return q + 1 +
         static_cast<std::int64_t>(invariants_detail::isqrt_u64(
             static_cast<std::uint64_t>(4 * I * I * q)));
}

struct Validity {
  std::int64_t min_q = 0;
  bool requires_char2 = false;      // q must be a power of two
  bool requires_not_char2 = false;  // q must not be a power of two
  bool requires_odd = false;
  std::string note;

  bool holds(std::int64_t q) const {
    const bool pow2 = (q & (q - 1)) == 0;
    if (q < min_q) return false;
    if (requires_char2 && !pow2) return false;
    if (requires_not_char2 && pow2) return false;
    if (requires_odd && q % 2 == 0) return false;
    return true;
  }
};

struct DistancePrediction {
  std::int64_t value = 0;
  Validity validity;
};

namespace invariants_detail {

// class index 1..14 from an id like "P6_11"
inline int p6_index(const std::string& class_id) {
  if (class_id.rfind("P6_", 0) != 0)
    throw std::invalid_argument("expected a P6 class id, got " + class_id);
  const int idx = std::stoi(class_id.substr(3));
  if (idx < 1 || idx > 14)
    throw std::invalid_argument("unknown class " + class_id);
  return idx;
}

}  // namespace invariants_detail

// Closed-form minimum distances for the fourteen 6-point classes, grouped:
//   class 1        -> (q-1)^2 - 5(q-1)
//   class 2        -> (q-1)^2 - 4(q-1)
//   classes 3..8   -> (q-1)^2 - 3(q-1)
//   classes 9..13  -> (q-1)^2 - 2(q-1)
//   class 14       -> (q-1)^2 - (3q-5)
// Proven for q >= 9; the q = 7, 8 values live in the enumerated tables.
inline DistancePrediction predicted_distance(const std::string& class_id,
                                             std::int64_t q) {
  const int idx = invariants_detail::p6_index(class_id);
  if (q < 9)
    throw std::invalid_argument(
        "distance groups hold for q >= 9; use enumerated tables below that");
  const std::int64_t s = q - 1;
  DistancePrediction out;
  out.validity.min_q = 9;
  out.validity.note = "q = 7, 8 covered by enumeration only";
  if (idx == 1)
    out.value = s * s - 5 * s;
  else if (idx == 2)
    out.value = s * s - 4 * s;
  else if (idx == 14)
    out.value = s * s - (3 * q - 5);
  else if (idx <= 8)
    out.value = s * s - 3 * s;
  else
    out.value = s * s - 2 * s;
  return out;
}

struct CountPrediction {
  enum class Kind { exact, lower_bound, positive };
  std::int64_t weight = 0;
  std::int64_t value = 0;
  Validity validity;
  Kind kind = Kind::exact;
};

// Predicted codeword count at weight (q-1)^2 - 2(q-1) (the n1 column of the
// reducible-family tables), classes 3..13. Validity starts at q = 23; the
// class-10 formula is proven from q = 43 and machine-checked below.
inline CountPrediction predicted_n1(const std::string& class_id,
                                    std::int64_t q) {
  const int idx = invariants_detail::p6_index(class_id);
  if (idx < 3 || idx > 13)
    throw std::invalid_argument("n1 formulas cover classes 3..13 only");
  const std::int64_t s = q - 1;
  const std::int64_t B = (s * (s - 1) / 2) * s;  // C(q-1,2)(q-1)
  const std::int64_t cube = s * s * s;

  CountPrediction out;
  out.weight = s * s - 2 * s;
  out.validity.min_q = 23;
  switch (idx) {
    case 3:
    case 5:
    case 6:
      out.value = 4 * B;
      break;
    case 7:
      out.value = 4 * B + (s % 3 == 0 ? 2 * cube / 3 : 0);
      break;
    case 4:
      out.value = 5 * B;
      break;
    case 8:
      out.value = 5 * B + (q % 2 == 1 ? cube / 2 : 0);
      break;
    case 9:
    case 11:
      out.value = 2 * B;
      break;
    case 12:
      out.value = 2 * B + ((q & (q - 1)) != 0 ? cube / 2 : 0);
      break;
    case 10:
    case 13:
      out.value = 3 * B;
      break;
  }
  if (idx == 10)
    out.validity.note =
        "proven for q >= 43; 23 <= q <= 41 machine-checked against the "
        "published coefficients";
  return out;
}

// Predicted codeword count at weight (q-1)^2 - (2q-3) (the n2 column),
// where the tables address the class/q combination. Unaddressed
// combinations throw.
inline CountPrediction predicted_n2(const std::string& class_id,
                                    std::int64_t q) {
  const int idx = invariants_detail::p6_index(class_id);
  const std::int64_t s = q - 1;
  const std::int64_t cube = s * s * s;
  const bool pow2 = (q & (q - 1)) == 0;

  CountPrediction out;
  out.weight = s * s - (2 * q - 3);
  out.validity.min_q = 23;

  switch (idx) {
    case 3:
      out.value = (6 + q * (q - 1) / 2) * cube;
      break;
    case 5:
      out.value = 0;
      out.validity.min_q = 27;
      out.validity.note =
          "zero proven for q >= 47; 27 <= q <= 43 machine-checked; q = 25 "
          "deviates (enumerated count is nonzero)";
      break;
    case 6:
      out.value = cube;
      break;
    case 7:
      if (s % 3 == 0)
        throw std::invalid_argument(
            "n2 for class 7 is addressed only when 3 does not divide q-1");
      out.value = 2 * cube;
      break;
    case 4:
      if (!pow2)
        throw std::invalid_argument(
            "n2 for class 4 is addressed only in characteristic 2");
      out.value = 0;
      out.validity.requires_char2 = true;
      out.validity.min_q = 16;
      out.validity.note = "q = 8 deviates (enumerated count is nonzero)";
      break;
    case 8:
      if (!pow2)
        throw std::invalid_argument(
            "n2 for class 8 is addressed only in characteristic 2");
      out.value = cube;
      out.validity.requires_char2 = true;
      out.validity.min_q = 8;
      break;
    case 9:
      out.value = 5 * cube;
      break;
    case 10:
      out.value = 0;
      out.validity.min_q = 27;
      out.validity.note =
          "zero proven for q >= 47; 27 <= q <= 43 machine-checked; q = 25 "
          "deviates (enumerated count is nonzero)";
      break;
    case 11:
      out.value = 3 * cube;
      break;
    case 12:
      if (!pow2)
        throw std::invalid_argument(
            "n2 for class 12 is addressed only in characteristic 2");
      out.value = 6 * cube;
      out.validity.requires_char2 = true;
      out.kind = CountPrediction::Kind::lower_bound;
      break;
    case 13:
      out.value = 0;
      out.kind = CountPrediction::Kind::positive;
      break;
    default:
      throw std::invalid_argument(
          "n2 formulas do not cover class " + class_id);
  }
  return out;
}

struct DistinguishResult {
  bool identical = false;
  std::int64_t weight = -1;  // first differing weight when not identical
};

// Compares two weight distributions (index = weight). Equal enumerators are
// a necessary condition for monomial equivalence of the codes.
inline DistinguishResult distinguish(const std::vector<std::uint64_t>& e1,
                                     const std::vector<std::uint64_t>& e2) {
  if (e1.size() != e2.size())
    throw std::invalid_argument("enumerators have different lengths");
  for (size_t w = 0; w < e1.size(); ++w)
    if (e1[w] != e2[w]) return {false, static_cast<std::int64_t>(w)};
  return {true, -1};
}

}  // namespace toric
