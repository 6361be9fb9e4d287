#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

// Edge profile of a convex polygon: for every primitive edge direction, the
// total lattice length of the edge with that direction. Stored sorted by
// direction. Minkowski sums add profiles pointwise, which is what makes
// profiles the right state space for decomposition searches: a multiset of
// directed primitive steps is the profile of a (unique up to translation)
// positive-dimensional convex polygon iff the steps sum to zero and at least
// two distinct directions occur.
using EdgeProfile = std::vector<std::pair<LatticePoint, std::int64_t>>;

inline EdgeProfile edge_profile(const LatticePolygon& P) {
  using lattice_detail::seg_lattice_length;
  EdgeProfile prof;
  if (P.dim() == 0) return prof;
  if (P.dim() == 1) {
    const LatticePoint a = P.vertices[0], b = P.vertices[1];
    const std::int64_t g = seg_lattice_length(a, b);
    const LatticePoint d{(b.x - a.x) / g, (b.y - a.y) / g};
    prof.push_back({d, g});
    prof.push_back({{-d.x, -d.y}, g});
  } else {
    const size_t m = P.vertices.size();
    for (size_t i = 0; i < m; ++i) {
      const LatticePoint a = P.vertices[i], b = P.vertices[(i + 1) % m];
      const std::int64_t g = seg_lattice_length(a, b);
      prof.push_back({{(b.x - a.x) / g, (b.y - a.y) / g}, g});
    }
  }
  std::sort(prof.begin(), prof.end());
  return prof;
}

namespace minkowski_detail {

// angular order starting just above direction (1,0), counter-clockwise
inline bool angle_less(LatticePoint a, LatticePoint b) {
  auto half = [](LatticePoint d) {
    return (d.y < 0 || (d.y == 0 && d.x < 0)) ? 1 : 0;
  };
  const int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

}  // namespace minkowski_detail

// Reconstructs the polygon with the given closed profile, anchored so that
// the walk starts at the origin, then canonicalized. Throws if the profile
// does not close up.
inline LatticePolygon profile_polygon(const EdgeProfile& prof) {
  if (prof.empty()) throw std::invalid_argument("empty profile");
  EdgeProfile sorted = prof;
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) {
              return minkowski_detail::angle_less(a.first, b.first);
            });
  std::vector<LatticePoint> verts;
  LatticePoint cur{0, 0};
  verts.push_back(cur);
  LatticePoint sum{0, 0};
  for (const auto& [d, g] : sorted) {
    cur = {cur.x + g * d.x, cur.y + g * d.y};
    verts.push_back(cur);
    sum = {sum.x + g * d.x, sum.y + g * d.y};
  }
  if (sum != LatticePoint{0, 0})
    throw std::invalid_argument("profile does not close up");
  return convex_hull(std::move(verts));
}

namespace minkowski_detail {

// Exact maximum number of parts in a partition of `prof` into closed
// subprofiles (each realizable as a positive-dimensional summand).
// Memoized exhaustive search over subprofiles containing the first live
// direction; parts are closed by construction, and every partition can be
// ordered so that its first part contains that direction, so the search is
// complete.
class MaxPartsState {
 public:
  explicit MaxPartsState(const EdgeProfile& prof) {
    for (const auto& e : prof) dirs_.push_back(e.first);
  }

  int solve_impl(std::vector<std::int64_t> rem) {
    bool empty = true;
    for (std::int64_t r : rem) empty = empty && r == 0;
    if (empty) return 0;
    auto it = memo_.find(rem);
    if (it != memo_.end()) return it->second;

    size_t pivot = 0;
    while (rem[pivot] == 0) ++pivot;

    int best = -1;  // -1: no exact partition from this state
    std::vector<std::int64_t> take(rem.size(), 0);
    enumerate_parts(rem, take, pivot, pivot, best);
    memo_[rem] = best;
    return best;
  }

 private:
  // enumerate closed subprofiles with take[pivot] >= 1
  void enumerate_parts(const std::vector<std::int64_t>& rem,
                       std::vector<std::int64_t>& take, size_t pivot,
                       size_t idx, int& best) {
    if (idx == rem.size()) {
      std::int64_t sx = 0, sy = 0;
      int support = 0;
      for (size_t i = 0; i < take.size(); ++i) {
        sx += take[i] * dirs_[i].x;
        sy += take[i] * dirs_[i].y;
        support += take[i] > 0;
      }
      if (sx != 0 || sy != 0 || support < 2) return;
      std::vector<std::int64_t> next(rem);
      for (size_t i = 0; i < take.size(); ++i) next[i] -= take[i];
      const int sub = solve_impl(std::move(next));
      if (sub >= 0 && sub + 1 > best) best = sub + 1;
      return;
    }
    const std::int64_t lo = (idx == pivot) ? 1 : 0;
    for (std::int64_t t = lo; t <= rem[idx]; ++t) {
      take[idx] = t;
      enumerate_parts(rem, take, pivot, idx + 1, best);
    }
    take[idx] = 0;
  }

  std::vector<LatticePoint> dirs_;
  std::map<std::vector<std::int64_t>, int> memo_;
};

inline std::vector<std::int64_t> full_caps(const EdgeProfile& prof) {
  std::vector<std::int64_t> caps;
  for (const auto& [d, g] : prof) caps.push_back(g);
  return caps;
}

}  // namespace minkowski_detail

// Maximum number of positive-dimensional summands over all partitions of
// prof into closed subprofiles. Returns 0 for the empty profile.
inline int maxparts_generic(const EdgeProfile& prof) {
  if (prof.empty()) return 0;
  minkowski_detail::MaxPartsState st(prof);
  const int r = st.solve_impl(minkowski_detail::full_caps(prof));
  if (r < 0) throw std::logic_error("closed profile had no partition");
  return r;
}

// Fast-path variant: parts restricted to the alphabet of maximal
// decompositions (primitive segments, unit triangles, exceptional
// triangles). Returns the maximum part count over exact tilings, or -1 when
// the profile cannot be tiled by alphabet parts alone.
inline int maxparts_alphabet(const EdgeProfile& prof) {
  using minkowski_detail::angle_less;
  std::vector<LatticePoint> dirs;
  std::vector<std::int64_t> caps;
  for (const auto& [d, g] : prof) {
    dirs.push_back(d);
    caps.push_back(g);
  }
  std::map<std::vector<std::int64_t>, int> memo;

  auto find_dir = [&](LatticePoint d) -> int {
    for (size_t i = 0; i < dirs.size(); ++i)
      if (dirs[i] == d) return static_cast<int>(i);
    return -1;
  };

  std::function<int(std::vector<std::int64_t>)> go =
      [&](std::vector<std::int64_t> rem) -> int {
    bool empty = true;
    for (std::int64_t r : rem) empty = empty && r == 0;
    if (empty) return 0;
    auto it = memo.find(rem);
    if (it != memo.end()) return it->second;
    size_t pivot = 0;
    while (rem[pivot] == 0) ++pivot;
    int best = -1;
    auto try_part = [&](const std::vector<int>& part) {
      std::vector<std::int64_t> next(rem);
      for (int i : part) {
        if (next[i] == 0) return;
        --next[i];
      }
      const int sub = go(std::move(next));
      if (sub >= 0 && sub + 1 > best) best = sub + 1;
    };
    // primitive segment through the pivot direction
    const int opp = find_dir({-dirs[pivot].x, -dirs[pivot].y});
    if (opp >= 0) try_part({static_cast<int>(pivot), opp});
    // unit or exceptional triangle through the pivot direction
    for (size_t j = 0; j < dirs.size(); ++j) {
      if (j == pivot || rem[j] == 0) continue;
      const LatticePoint third{-dirs[pivot].x - dirs[j].x,
                               -dirs[pivot].y - dirs[j].y};
      const int k = find_dir(third);
      if (k < 0 || rem[k] == 0) continue;
      const std::int64_t a2 = cross(dirs[pivot], dirs[j]);
      const std::int64_t area2 = a2 < 0 ? -a2 : a2;
      if (area2 != 1 && area2 != 3) continue;
      try_part({static_cast<int>(pivot), static_cast<int>(j), k});
    }
    memo[rem] = best;
    return best;
  };
  return go(caps);
}

// Fast-path full Minkowski length: per subpolytope, the part count of the
// best exact tiling of its profile by the restricted alphabet (or 1 when no
// tiling exists, the polygon itself being a single summand). Maximizing over
// subpolytopes this equals the exact L: any decomposition into m summands
// yields a zonotope of m primitive segments (one chosen inside each summand)
// that is again a subpolytope, and segment tilings are in the alphabet.
inline int full_minkowski_length_fast(const LatticePolygon& P) {
  const std::vector<LatticePoint> pts = lattice_points(P);
  if (pts.size() < 2)
    throw std::invalid_argument("full_minkowski_length needs >= 2 points");
  if (pts.size() > 16)
    throw std::invalid_argument("subpolytope sweep limited to 16 points");
  std::set<std::vector<LatticePoint>> hulls;
  const size_t m = pts.size();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if ((mask & (mask - 1)) == 0) continue;
    std::vector<LatticePoint> sub;
    for (size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) sub.push_back(pts[i]);
    hulls.insert(convex_hull(std::move(sub)).vertices);
  }
  int L = 0;
  for (const auto& verts : hulls) {
    LatticePolygon Q;
    Q.vertices = verts;
    if (Q.dim() == 0) continue;
    const int tiled = maxparts_alphabet(edge_profile(Q));
    L = std::max(L, std::max(1, tiled));
  }
  return L;
}

struct MinkowskiLength {
  int l = 0;
  std::vector<LatticePolygon> witness;  // summands; their Minkowski sum is P
};

// Minkowski length l(P): the largest number of positive-dimensional lattice
// summands in a decomposition P = Q_1 + ... + Q_l. Exhaustive over the edge
// profile, so exact; intended for small polygons. A witness decomposition is
// reconstructed and translated so it sums to P exactly.
inline MinkowskiLength minkowski_length(const LatticePolygon& P) {
  if (lattice_points(P).size() < 2)
    throw std::invalid_argument("minkowski_length needs >= 2 lattice points");
  const EdgeProfile prof = edge_profile(P);
  const int l = maxparts_generic(prof);

  // witness by greedy peeling: pick any part whose removal keeps the rest
  // exactly decomposable into l-1 parts
  std::vector<LatticePolygon> parts;
  EdgeProfile rem = prof;
  int need = l;
  while (need > 0) {
    bool found = false;
    // enumerate closed subprofiles of rem containing its first direction
    std::vector<std::int64_t> caps = minkowski_detail::full_caps(rem);
    std::vector<std::int64_t> take(caps.size(), 0);
    size_t pivot = 0;
    while (caps[pivot] == 0) ++pivot;
    std::function<bool(size_t)> rec = [&](size_t idx) -> bool {
      if (idx == caps.size()) {
        std::int64_t sx = 0, sy = 0;
        int support = 0;
        for (size_t i = 0; i < take.size(); ++i) {
          sx += take[i] * rem[i].first.x;
          sy += take[i] * rem[i].first.y;
          support += take[i] > 0;
        }
        if (sx != 0 || sy != 0 || support < 2) return false;
        EdgeProfile part, rest;
        for (size_t i = 0; i < take.size(); ++i) {
          if (take[i] > 0) part.push_back({rem[i].first, take[i]});
          if (caps[i] - take[i] > 0)
            rest.push_back({rem[i].first, caps[i] - take[i]});
        }
        if (maxparts_generic(rest) == need - 1) {
          parts.push_back(profile_polygon(part));
          rem = rest;
          return true;
        }
        return false;
      }
      const std::int64_t lo = (idx == pivot) ? 1 : 0;
      for (std::int64_t t = lo; t <= caps[idx]; ++t) {
        take[idx] = t;
        if (rec(idx + 1)) return true;
      }
      take[idx] = 0;
      return false;
    };
    found = rec(0);
    if (!found) throw std::logic_error("witness reconstruction failed");
    --need;
  }

  // translate the first summand so the witness sums exactly to P
  if (!parts.empty()) {
    LatticePolygon total = parts[0];
    for (size_t i = 1; i < parts.size(); ++i)
      total = minkowski_sum(total, parts[i]);
    const LatticePoint shift = P.vertices[0] - total.vertices[0];
    UnimodularAffineMap tr;
    tr.t = shift;
    parts[0] = apply_map(tr, parts[0]);
  }
  return {l, std::move(parts)};
}

struct FullMinkowskiLength {
  int L = 0;
  LatticePolygon witness_subpolytope;
  bool exceptional_possible = false;
};

// The canonical exceptional triangle: one interior point, three boundary
// points, all edges primitive.
inline const LatticePolygon& exceptional_triangle() {
  static const LatticePolygon T =
      convex_hull({{0, 0}, {2, 1}, {1, 2}});
  return T;
}

// Full Minkowski length L(P) = max over subpolytopes Q of l(Q), together
// with a witness subpolytope and whether some maximal decomposition of some
// maximal-length subpolytope contains an exceptional-triangle summand.
// Subpolytopes are hulls of subsets of P's lattice points, so the sweep is
// exponential in the point count; callers are expected to stay small (the
// guard rejects more than 16 points).
inline FullMinkowskiLength full_minkowski_length(const LatticePolygon& P) {
  const std::vector<LatticePoint> pts = lattice_points(P);
  if (pts.size() < 2)
    throw std::invalid_argument("full_minkowski_length needs >= 2 points");
  if (pts.size() > 16)
    throw std::invalid_argument("subpolytope sweep limited to 16 points");

  std::set<std::vector<LatticePoint>> hulls;
  const size_t m = pts.size();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    if ((mask & (mask - 1)) == 0) continue;  // singletons have no length
    std::vector<LatticePoint> sub;
    for (size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) sub.push_back(pts[i]);
    hulls.insert(convex_hull(std::move(sub)).vertices);
  }

  FullMinkowskiLength out;
  std::vector<std::pair<LatticePolygon, EdgeProfile>> maximal;
  for (const auto& verts : hulls) {
    LatticePolygon Q;
    Q.vertices = verts;
    if (Q.dim() == 0) continue;
    const EdgeProfile prof = edge_profile(Q);
    const int l = maxparts_generic(prof);
    if (l > out.L) {
      out.L = l;
      out.witness_subpolytope = Q;
      maximal.clear();
    }
    if (l == out.L) maximal.push_back({Q, prof});
  }

  // exceptional summand detection: a triangle part uses three distinct
  // primitive directions once each; it is exceptional iff its normalized
  // area is 3 (then it is lattice-equivalent to the canonical one, which we
  // still confirm explicitly)
  for (const auto& [Q, prof] : maximal) {
    if (out.exceptional_possible) break;
    const size_t nd = prof.size();
    for (size_t i = 0; i < nd && !out.exceptional_possible; ++i) {
      for (size_t j = i + 1; j < nd && !out.exceptional_possible; ++j) {
        for (size_t k = j + 1; k < nd; ++k) {
          const LatticePoint d1 = prof[i].first, d2 = prof[j].first,
                             d3 = prof[k].first;
          if (d1 + d2 + d3 != LatticePoint{0, 0}) continue;
          const std::int64_t a2 = cross(d1, d2);
          if (a2 != 3 && a2 != -3) continue;
          LatticePolygon tri = profile_polygon({{d1, 1}, {d2, 1}, {d3, 1}});
          if (!lattice_equivalent(tri, exceptional_triangle())) continue;
          EdgeProfile rest;
          for (size_t t = 0; t < nd; ++t) {
            std::int64_t g = prof[t].second;
            if (t == i || t == j || t == k) --g;
            if (g > 0) rest.push_back({prof[t].first, g});
          }
          const int restparts = rest.empty() ? 0 : maxparts_generic(rest);
          if (restparts == out.L - 1) {
            out.exceptional_possible = true;
            break;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace toric
