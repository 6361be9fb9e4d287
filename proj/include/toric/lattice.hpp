#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace toric {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend LatticePoint operator+(LatticePoint a, LatticePoint b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend LatticePoint operator-(LatticePoint a, LatticePoint b) {
    return {a.x - b.x, a.y - b.y};
  }
};

inline std::int64_t cross(LatticePoint a, LatticePoint b) {
  return a.x * b.y - a.y * b.x;
}

// Convex lattice polygon in canonical form: vertices counter-clockwise with
// no three consecutive collinear, starting at the lexicographically least
// vertex. Degenerate cases are first-class: a single point has one vertex, a
// segment has its two endpoints in lexicographic order. Canonical form makes
// polygon equality plain list equality.
struct LatticePolygon {
  std::vector<LatticePoint> vertices;
  friend bool operator==(const LatticePolygon&, const LatticePolygon&) = default;
  int dim() const {
    if (vertices.size() <= 1) return 0;
    return vertices.size() == 2 ? 1 : 2;
  }
};

// Affine map x -> M x + t with det M = +-1; acts on row vectors (x, y) as
// (m11 x + m12 y + t.x, m21 x + m22 y + t.y).
struct UnimodularAffineMap {
  std::int64_t m11 = 1, m12 = 0, m21 = 0, m22 = 1;
  LatticePoint t{0, 0};
  std::int64_t det() const { return m11 * m22 - m12 * m21; }
  LatticePoint operator()(LatticePoint p) const {
    return {m11 * p.x + m12 * p.y + t.x, m21 * p.x + m22 * p.y + t.y};
  }
  UnimodularAffineMap inverse() const {
    const std::int64_t d = det();
    if (d != 1 && d != -1)
      throw std::invalid_argument("matrix is not unimodular");
    // inverse linear part: adj(M)/det; for det +-1 this is d * adj(M)
    UnimodularAffineMap inv;
    inv.m11 = d * m22;
    inv.m12 = d * -m12;
    inv.m21 = d * -m21;
    inv.m22 = d * m11;
    const LatticePoint it{inv.m11 * t.x + inv.m12 * t.y,
                          inv.m21 * t.x + inv.m22 * t.y};
    inv.t = {-it.x, -it.y};
    return inv;
  }
  friend UnimodularAffineMap compose(const UnimodularAffineMap& f,
                                     const UnimodularAffineMap& g) {
    // (f after g)(x) = f(g(x))
    UnimodularAffineMap h;
    h.m11 = f.m11 * g.m11 + f.m12 * g.m21;
    h.m12 = f.m11 * g.m12 + f.m12 * g.m22;
    h.m21 = f.m21 * g.m11 + f.m22 * g.m21;
    h.m22 = f.m21 * g.m12 + f.m22 * g.m22;
    h.t = f(g.t);
    return h;
  }
};

// Canonical convex hull (monotone chain). Collinear inputs collapse to a
// segment, coincident inputs to a point.
inline LatticePolygon convex_hull(std::vector<LatticePoint> pts) {
  if (pts.empty()) throw std::invalid_argument("convex_hull of empty set");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  LatticePolygon P;
  if (pts.size() == 1) {
    P.vertices = {pts[0]};
    return P;
  }
  const size_t m = pts.size();
  std::vector<LatticePoint> h(2 * m);
  size_t k = 0;
  for (size_t i = 0; i < m; ++i) {  // lower chain
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = m - 1, lo = k + 1; i-- > 0;) {  // upper chain
    while (k >= lo && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);  // last point equals the first
  if (h.size() == 1) {
    // all collinear: monotone chain degenerates; keep the two extremes
    P.vertices = {pts.front(), pts.back()};
    return P;
  }
  // counter-clockwise already; rotate so the lexicographically least vertex
  // leads (it is pts.front(), which the lower chain starts with)
  auto it = std::min_element(h.begin(), h.end());
  std::rotate(h.begin(), it, h.end());
  P.vertices = std::move(h);
  return P;
}

namespace lattice_detail {

inline std::int64_t igcd(std::int64_t a, std::int64_t b) {
  return std::gcd(static_cast<long long>(a < 0 ? -a : a),
                  static_cast<long long>(b < 0 ? -b : b));
}

// lattice length of the segment from a to b (0 when a == b)
inline std::int64_t seg_lattice_length(LatticePoint a, LatticePoint b) {
  return igcd(b.x - a.x, b.y - a.y);
}

}  // namespace lattice_detail

// All integer points of P (boundary included), sorted lexicographically by
// (x, then y). This order fixes the monomial order downstream.
inline std::vector<LatticePoint> lattice_points(const LatticePolygon& P) {
  using namespace lattice_detail;
  std::vector<LatticePoint> out;
  if (P.vertices.empty()) return out;
  if (P.dim() == 0) {
    out = {P.vertices[0]};
    return out;
  }
  if (P.dim() == 1) {
    const LatticePoint a = P.vertices[0], b = P.vertices[1];
    const std::int64_t g = seg_lattice_length(a, b);
    const LatticePoint d{(b.x - a.x) / g, (b.y - a.y) / g};
    for (std::int64_t i = 0; i <= g; ++i)
      out.push_back({a.x + i * d.x, a.y + i * d.y});
    std::sort(out.begin(), out.end());
    return out;
  }
  std::int64_t xmin = P.vertices[0].x, xmax = xmin, ymin = P.vertices[0].y,
               ymax = ymin;
  for (const auto& v : P.vertices) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const size_t m = P.vertices.size();
  for (std::int64_t x = xmin; x <= xmax; ++x) {
    for (std::int64_t y = ymin; y <= ymax; ++y) {
      const LatticePoint p{x, y};
      bool inside = true;
      for (size_t i = 0; i < m && inside; ++i) {
        const LatticePoint a = P.vertices[i];
        const LatticePoint b = P.vertices[(i + 1) % m];
        inside = cross(b - a, p - a) >= 0;
      }
      if (inside) out.push_back(p);
    }
  }
  return out;  // scan order is already lexicographic
}

struct PickAccounting {
  std::int64_t sharp = 0;     // total lattice points
  std::int64_t area2 = 0;     // twice the Euclidean area (shoelace)
  std::int64_t boundary = 0;  // 2-D: boundary point count; segment: lattice length
  std::int64_t interior = 0;
  friend bool operator==(const PickAccounting&, const PickAccounting&) = default;
};

// For 2-D polygons Pick's identity holds exactly: 2*sharp = area2 + boundary + 2.
// A segment reports its lattice length as `boundary` (one more than the number
// of lattice points strictly between the endpoints); a point reports (1,0,0,0).
inline PickAccounting pick_accounting(const LatticePolygon& P) {
  using namespace lattice_detail;
  PickAccounting acc;
  if (P.dim() == 0) {
    acc.sharp = 1;
    return acc;
  }
  if (P.dim() == 1) {
    const std::int64_t g = seg_lattice_length(P.vertices[0], P.vertices[1]);
    acc.sharp = g + 1;
    acc.boundary = g;
    return acc;
  }
  const size_t m = P.vertices.size();
  for (size_t i = 0; i < m; ++i) {
    const LatticePoint a = P.vertices[i], b = P.vertices[(i + 1) % m];
    acc.area2 += cross(a, b);
    acc.boundary += seg_lattice_length(a, b);
  }
  if (acc.area2 <= 0)
    throw std::logic_error("canonical polygon must be counter-clockwise");
  acc.sharp = static_cast<std::int64_t>(lattice_points(P).size());
  acc.interior = acc.sharp - acc.boundary;
  if (2 * acc.sharp != acc.area2 + acc.boundary + 2)
    throw std::logic_error("Pick identity violated");
  return acc;
}

// Image polygon under a unimodular affine map, re-canonicalized.
inline LatticePolygon apply_map(const UnimodularAffineMap& T,
                                const LatticePolygon& P) {
  const std::int64_t d = T.det();
  if (d != 1 && d != -1)
    throw std::invalid_argument("matrix is not unimodular");
  std::vector<LatticePoint> img;
  img.reserve(P.vertices.size());
  for (const auto& v : P.vertices) img.push_back(T(v));
  return convex_hull(std::move(img));
}

// Minkowski sum: hull of pairwise vertex sums (exact for convex inputs).
inline LatticePolygon minkowski_sum(const LatticePolygon& P,
                                    const LatticePolygon& Q) {
  if (P.vertices.empty() || Q.vertices.empty())
    throw std::invalid_argument("minkowski_sum of empty polygon");
  std::vector<LatticePoint> sums;
  sums.reserve(P.vertices.size() * Q.vertices.size());
  for (const auto& a : P.vertices)
    for (const auto& b : Q.vertices) sums.push_back(a + b);
  return convex_hull(std::move(sums));
}

namespace lattice_detail {

// Decide whether the affine map sending 0 -> c, u -> a2, v -> b2 (after the
// translation that puts p0 at the origin) is integral and unimodular.
// Solves M [u v] = [a2-c b2-c].
inline std::optional<UnimodularAffineMap> solve_map(LatticePoint p0,
                                                    LatticePoint u,
                                                    LatticePoint v,
                                                    LatticePoint c,
                                                    LatticePoint a2,
                                                    LatticePoint b2) {
  const std::int64_t d = cross(u, v);
  if (d == 0) return std::nullopt;
  const LatticePoint r1 = a2 - c, r2 = b2 - c;
  // M = [r1 r2] * adj([u v]) / det; adj([[ux, vx],[uy, vy]]) = [[vy,-vx],[-uy,ux]]
  const std::int64_t n11 = r1.x * v.y - r2.x * u.y;
  const std::int64_t n12 = -r1.x * v.x + r2.x * u.x;
  const std::int64_t n21 = r1.y * v.y - r2.y * u.y;
  const std::int64_t n22 = -r1.y * v.x + r2.y * u.x;
  if (n11 % d || n12 % d || n21 % d || n22 % d) return std::nullopt;
  UnimodularAffineMap T;
  T.m11 = n11 / d;
  T.m12 = n12 / d;
  T.m21 = n21 / d;
  T.m22 = n22 / d;
  if (T.det() != 1 && T.det() != -1) return std::nullopt;
  // full map: x -> M (x - p0) + c
  T.t = {c.x - (T.m11 * p0.x + T.m12 * p0.y),
         c.y - (T.m21 * p0.x + T.m22 * p0.y)};
  return T;
}

}  // namespace lattice_detail

// Unimodular-affine equivalence. Returns a witness map T with
// apply_map(T, P) == Q, or nullopt. Complete search: an affine bijection is
// determined by the images of three non-collinear points, so candidate maps
// are enumerated by sending a fixed basis triple of P to ordered point
// triples of Q. Intended for small polygons (the search is cubic in the
// lattice-point count).
inline std::optional<UnimodularAffineMap> lattice_equivalent(
    const LatticePolygon& P, const LatticePolygon& Q) {
  using namespace lattice_detail;
  if (P.vertices.empty() || Q.vertices.empty())
    throw std::invalid_argument("equivalence of empty polygon");
  if (P.dim() != Q.dim()) return std::nullopt;

  if (P.dim() == 0) {
    UnimodularAffineMap T;
    T.t = Q.vertices[0] - P.vertices[0];
    return T;
  }

  if (P.dim() == 1) {
    const std::int64_t gp = seg_lattice_length(P.vertices[0], P.vertices[1]);
    const std::int64_t gq = seg_lattice_length(Q.vertices[0], Q.vertices[1]);
    if (gp != gq) return std::nullopt;
    const LatticePoint u{(P.vertices[1].x - P.vertices[0].x) / gp,
                         (P.vertices[1].y - P.vertices[0].y) / gp};
    // complete u to a unimodular basis (u, w): cross(u, w) = 1 via gcd
    // coefficients; u is primitive so ax*uy - ... solvable
    std::int64_t wx = 0, wy = 0;
    {
      // find wx, wy with u.x * wy - u.y * wx = 1
      std::int64_t a = u.x, b = -u.y;
      // extended gcd of (a, b) = 1
      std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1, r0 = a, r1 = b;
      while (r1 != 0) {
        const std::int64_t qd = r0 / r1;
        std::tie(r0, r1) = std::make_tuple(r1, r0 - qd * r1);
        std::tie(s0, s1) = std::make_tuple(s1, s0 - qd * s1);
        std::tie(t0, t1) = std::make_tuple(t1, t0 - qd * t1);
      }
      if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
      }
      if (r0 != 1) throw std::logic_error("direction not primitive");
      wy = s0;  // a * s0 + b * t0 = 1  =>  u.x * wy - u.y * wx = 1
      wx = t0;
    }
    for (int flip = 0; flip < 2; ++flip) {
      const LatticePoint qa = flip ? Q.vertices[1] : Q.vertices[0];
      const LatticePoint qb = flip ? Q.vertices[0] : Q.vertices[1];
      const LatticePoint u2{(qb.x - qa.x) / gq, (qb.y - qa.y) / gq};
      std::int64_t wx2 = 0, wy2 = 0;
      {
        std::int64_t a = u2.x, b = -u2.y;
        std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1, r0 = a, r1 = b;
        while (r1 != 0) {
          const std::int64_t qd = r0 / r1;
          std::tie(r0, r1) = std::make_tuple(r1, r0 - qd * r1);
          std::tie(s0, s1) = std::make_tuple(s1, s0 - qd * s1);
          std::tie(t0, t1) = std::make_tuple(t1, t0 - qd * t1);
        }
        if (r0 < 0) {
          s0 = -s0;
          t0 = -t0;
        }
        wy2 = s0;
        wx2 = t0;
      }
      auto T = solve_map(P.vertices[0], u, {wx, wy}, qa, qa + u2,
                         qa + LatticePoint{wx2, wy2});
      if (T && apply_map(*T, P) == Q) return T;
    }
    return std::nullopt;
  }

  // fast rejects: lattice-point counts, vertex count, sorted edge lengths
  const PickAccounting ap = pick_accounting(P), aq = pick_accounting(Q);
  if (!(ap == aq)) return std::nullopt;
  if (P.vertices.size() != Q.vertices.size()) return std::nullopt;
  auto edge_lengths = [](const LatticePolygon& R) {
    std::vector<std::int64_t> ls;
    const size_t m = R.vertices.size();
    for (size_t i = 0; i < m; ++i)
      ls.push_back(
          seg_lattice_length(R.vertices[i], R.vertices[(i + 1) % m]));
    std::sort(ls.begin(), ls.end());
    return ls;
  };
  if (edge_lengths(P) != edge_lengths(Q)) return std::nullopt;

  const std::vector<LatticePoint> sp = lattice_points(P);
  const std::vector<LatticePoint> sq = lattice_points(Q);
  if (sp.size() != sq.size()) return std::nullopt;

  const LatticePoint p0 = sp[0];
  // basis pair from P's point differences: smallest-norm nonzero difference,
  // then an independent difference minimizing |cross|
  LatticePoint u{0, 0}, v{0, 0};
  {
    auto norm2 = [](LatticePoint d) { return d.x * d.x + d.y * d.y; };
    bool have_u = false;
    for (size_t i = 1; i < sp.size(); ++i) {
      const LatticePoint d = sp[i] - p0;
      if (!have_u || norm2(d) < norm2(u)) {
        u = d;
        have_u = true;
      }
    }
    bool have_v = false;
    for (size_t i = 1; i < sp.size(); ++i) {
      const LatticePoint d = sp[i] - p0;
      const std::int64_t c = cross(u, d);
      if (c == 0) continue;
      const std::int64_t ca = c < 0 ? -c : c;
      const std::int64_t cv = cross(u, v) < 0 ? -cross(u, v) : cross(u, v);
      if (!have_v || ca < cv || (ca == cv && norm2(d) < norm2(v))) {
        v = d;
        have_v = true;
      }
    }
    if (!have_v) throw std::logic_error("2-D polygon with collinear points");
  }

  for (const auto& c : sq) {
    for (const auto& a2 : sq) {
      if (a2 == c) continue;
      for (const auto& b2 : sq) {
        if (b2 == c || b2 == a2) continue;
        auto T = lattice_detail::solve_map(p0, u, v, c, a2, b2);
        if (!T) continue;
        // verify that T bijects the lattice point sets
        std::vector<LatticePoint> img;
        img.reserve(sp.size());
        for (const auto& s : sp) img.push_back((*T)(s));
        std::sort(img.begin(), img.end());
        if (img == sq) return T;
      }
    }
  }
  return std::nullopt;
}

}  // namespace toric
