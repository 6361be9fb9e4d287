#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "toric/gf.hpp"
#include "toric/invariants.hpp"
#include "toric/lattice.hpp"

namespace toric {

// Evaluation code of the monomials indexed by the lattice points of a
// polygon, over all (q-1)^2 points of the torus (F_q^*)^2.
struct ToricCode {
  FieldSpec field;
  LatticePolygon polygon;
  std::vector<LatticePoint> exponents;  // lex order; message coordinate order
  int k = 0;                            // dimension = number of exponents
  int n = 0;                            // block length = (q-1)^2
  std::vector<std::uint8_t> generator;  // k x n row-major

  const std::uint8_t* row(int i) const {
    return generator.data() + static_cast<size_t>(i) * n;
  }
};

namespace code_detail {

inline int generator_rank(const ToricCode& C) {
  const FieldSpec& F = C.field;
  std::vector<std::uint8_t> m = C.generator;
  const int k = C.k, n = C.n;
  auto at = [&](int r, int c) -> std::uint8_t& {
    return m[static_cast<size_t>(r) * n + c];
  };
  int rank = 0;
  for (int col = 0; col < n && rank < k; ++col) {
    int pivot = -1;
    for (int r = rank; r < k; ++r)
      if (at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    for (int c = col; c < n; ++c) std::swap(at(pivot, c), at(rank, c));
    const std::uint8_t scale = F.inv(at(rank, col));
    for (int c = col; c < n; ++c) at(rank, c) = F.mul(at(rank, c), scale);
    for (int r = 0; r < k; ++r) {
      if (r == rank || at(r, col) == 0) continue;
      const std::uint8_t f = at(r, col);
      for (int c = col; c < n; ++c)
        at(r, c) = F.sub(at(r, c), F.mul(f, at(rank, c)));
    }
    ++rank;
  }
  return rank;
}

}  // namespace code_detail

// Builds C_P over the given field. The polygon is used exactly as given:
// negative exponents are evaluated through inverses (equivalently, exponents
// act modulo q-1), which only rescales coordinates and leaves every weight
// unchanged relative to any translated copy.
// True when every lattice point of P has coordinates of magnitude at most
// q-2 and the bounding box has side at most q-2, so that all monomial
// exponents are distinct modulo q-1 and the evaluation code is non-degenerate.
inline bool fits_torus_box(const LatticePolygon& P, int q) {
  if (P.vertices.empty()) return false;
  const auto pts = lattice_points(P);
  std::int64_t xmin = pts[0].x, xmax = xmin, ymin = pts[0].y, ymax = ymin;
  for (const auto& e : pts) {
    xmin = std::min(xmin, e.x);
    xmax = std::max(xmax, e.x);
    ymin = std::min(ymin, e.y);
    ymax = std::max(ymax, e.y);
  }
  const std::int64_t limit = q - 2;
  return xmax - xmin <= limit && ymax - ymin <= limit &&
         std::max({std::abs(xmin), std::abs(xmax), std::abs(ymin),
                   std::abs(ymax)}) <= limit;
}

inline ToricCode build_code(const FieldSpec& F, const LatticePolygon& P) {
  if (F.q < 5)
    throw std::invalid_argument("fields below F_5 are not supported");
  if (P.vertices.empty()) throw std::invalid_argument("empty polygon");

  ToricCode C;
  C.field = F;
  C.polygon = P;
  C.exponents = lattice_points(P);
  C.k = static_cast<int>(C.exponents.size());
  C.n = (F.q - 1) * (F.q - 1);

  if (!fits_torus_box(P, F.q))
    throw std::invalid_argument("polygon does not fit the (q-1) box");

  const int m = F.q - 1;
  C.generator.resize(static_cast<size_t>(C.k) * C.n);
  for (int i = 0; i < C.k; ++i) {
    const std::int64_t m1 = C.exponents[i].x, m2 = C.exponents[i].y;
    std::uint8_t* out = C.generator.data() + static_cast<size_t>(i) * C.n;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        out[a * m + b] =
            static_cast<std::uint8_t>(F.pow_gen(a * m1 + b * m2));
  }

  if (code_detail::generator_rank(C) != C.k)
    throw std::logic_error("generator matrix is not full rank");
  return C;
}

inline std::vector<FieldElement> encode(const ToricCode& C,
                                        const std::vector<FieldElement>& msg) {
  if (static_cast<int>(msg.size()) != C.k)
    throw std::invalid_argument("message length must equal the dimension");
  for (FieldElement e : msg)
    if (!C.field.valid(e)) throw std::invalid_argument("element out of range");
  std::vector<FieldElement> cw(C.n, 0);
  for (int i = 0; i < C.k; ++i) {
    if (msg[i] == 0) continue;
    const std::uint8_t* r = C.row(i);
    for (int j = 0; j < C.n; ++j)
      cw[j] = C.field.add(cw[j], C.field.mul(msg[i], r[j]));
  }
  return cw;
}

inline int weight(const std::vector<FieldElement>& cw) {
  int w = 0;
  for (FieldElement e : cw) w += (e != 0);
  return w;
}

// Exact weight distribution; counts[w] = number of codewords of weight w.
struct WeightEnumerator {
  std::vector<std::uint64_t> counts;  // size n + 1

  std::int64_t min_positive_weight() const {
    for (size_t w = 1; w < counts.size(); ++w)
      if (counts[w] != 0) return static_cast<std::int64_t>(w);
    return -1;
  }
};

enum class EnumMode { full, projective };

// Snapshot of a partially completed enumeration: which chunks of the message
// space are done and the histogram accumulated so far (raw per-message
// counts, before any projective scaling).
struct EnumCheckpoint {
  std::uint64_t config_hash = 0;
  std::uint64_t total_chunks = 0;
  std::vector<std::uint64_t> done;       // completed chunk ids, ascending
  std::vector<std::uint64_t> histogram;  // size n + 1
};

class EnumCancelled : public std::runtime_error {
 public:
  EnumCheckpoint checkpoint;
  explicit EnumCancelled(EnumCheckpoint cp)
      : std::runtime_error("enumeration cancelled"),
        checkpoint(std::move(cp)) {}
};

struct EnumOptions {
  EnumMode mode = EnumMode::projective;
  int workers = 1;
  // Called (from a worker, serialized) at most once per interval with a
  // consistent snapshot; wire this to persistence for long runs.
  std::function<void(const EnumCheckpoint&)> on_checkpoint;
  double checkpoint_interval_s = 15.0;
  // Polled between chunks; returning true aborts the run by throwing
  // EnumCancelled carrying a final snapshot.
  std::function<bool()> should_cancel;
  std::optional<EnumCheckpoint> resume;
};

// Identifies one (code, mode, chunking) configuration so that checkpoints
// cannot be replayed against a different computation.
inline std::uint64_t enum_config_hash(const ToricCode& C, EnumMode mode) {
  std::string s = "chunks-v1|mode=";
  s += mode == EnumMode::full ? "full" : "projective";
  s += "|p=" + std::to_string(C.field.p) + "|deg=" +
       std::to_string(C.field.n) + "|mod=";
  for (int c : C.field.modulus) s += std::to_string(c) + ",";
  s += "|k=" + std::to_string(C.k) + "|n=" + std::to_string(C.n) + "|exps=";
  for (const auto& e : C.exponents)
    s += "(" + std::to_string(e.x) + "," + std::to_string(e.y) + ");";
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

namespace code_detail {

constexpr std::uint64_t kLow = 0x0101010101010101ull;
constexpr std::uint64_t kHigh = 0x8080808080808080ull;

inline std::uint64_t load64(const std::uint8_t* p) {
  std::uint64_t v;
  std::memcpy(&v, p, 8);
  return v;
}
inline void store64(std::uint8_t* p, std::uint64_t v) {
  std::memcpy(p, &v, 8);
}
inline int zero_bytes(std::uint64_t x) {
  // carry-free per-byte zero test: bit 7 of ((b & 0x7f) + 0x7f) | b is set
  // exactly when byte b is nonzero
  constexpr std::uint64_t k7f = 0x7f7f7f7f7f7f7f7full;
  const std::uint64_t nz = ((x & k7f) + k7f) | x;
  return std::popcount(~nz & kHigh);
}

// Characteristic 2: encodings add coefficient-wise, i.e. by XOR.
struct XorKernel {
  void add(std::uint8_t* cw, const std::uint8_t* d, int npad) const {
    for (int j = 0; j < npad; j += 8)
      store64(cw + j, load64(cw + j) ^ load64(d + j));
  }
  int add_count(std::uint8_t* cw, const std::uint8_t* d, int npad) const {
    int z = 0;
    for (int j = 0; j < npad; j += 8) {
      const std::uint64_t v = load64(cw + j) ^ load64(d + j);
      store64(cw + j, v);
      z += zero_bytes(v);
    }
    return z;
  }
};

// Prime fields: byte-wise add with a lane-parallel conditional subtract.
// Valid because lane values stay below 128 throughout.
struct PrimeKernel {
  std::uint64_t q = 0;
  void add(std::uint8_t* cw, const std::uint8_t* d, int npad) const {
    const std::uint64_t bias = (128 - q) * kLow, qv = q;
    for (int j = 0; j < npad; j += 8) {
      std::uint64_t s = load64(cw + j) + load64(d + j);
      const std::uint64_t m = (s + bias) & kHigh;
      s -= (m >> 7) * qv;
      store64(cw + j, s);
    }
  }
  int add_count(std::uint8_t* cw, const std::uint8_t* d, int npad) const {
    const std::uint64_t bias = (128 - q) * kLow, qv = q;
    int z = 0;
    for (int j = 0; j < npad; j += 8) {
      std::uint64_t s = load64(cw + j) + load64(d + j);
      const std::uint64_t m = (s + bias) & kHigh;
      s -= (m >> 7) * qv;
      store64(cw + j, s);
      z += zero_bytes(s);
    }
    return z;
  }
};

// Any field: gather through the addition table.
struct TableKernel {
  const std::uint8_t* tab = nullptr;
  std::uint64_t q = 0;
  void add(std::uint8_t* cw, const std::uint8_t* d, int npad) const {
    for (int j = 0; j < npad; ++j) cw[j] = tab[cw[j] * q + d[j]];
  }
  int add_count(std::uint8_t* cw, const std::uint8_t* d, int npad) const {
    int z = 0;
    for (int j = 0; j < npad; ++j) {
      const std::uint8_t v = tab[cw[j] * q + d[j]];
      cw[j] = v;
      z += (v == 0);
    }
    return z;
  }
};

// Per-row scaled copies and successor deltas, padded to 8-byte lanes:
//   srow(i, e) = (element e) * row_i
//   drow(i, e) = srow(i, (e+1) mod q) - srow(i, e)
// so advancing digit i from encoding e to e+1 is one vector addition.
struct ScaledRows {
  int k = 0, q = 0, n = 0, npad = 0;
  std::vector<std::uint8_t> srow, drow;

  const std::uint8_t* s(int i, int e) const {
    return srow.data() + (static_cast<size_t>(i) * q + e) * npad;
  }
  const std::uint8_t* d(int i, int e) const {
    return drow.data() + (static_cast<size_t>(i) * q + e) * npad;
  }
};

inline ScaledRows build_scaled_rows(const ToricCode& C) {
  const FieldSpec& F = C.field;
  ScaledRows R;
  R.k = C.k;
  R.q = F.q;
  R.n = C.n;
  R.npad = (C.n + 7) & ~7;
  R.srow.assign(static_cast<size_t>(R.k) * R.q * R.npad, 0);
  R.drow.assign(static_cast<size_t>(R.k) * R.q * R.npad, 0);
  for (int i = 0; i < R.k; ++i) {
    const std::uint8_t* base = C.row(i);
    for (int e = 0; e < R.q; ++e) {
      std::uint8_t* s =
          R.srow.data() + (static_cast<size_t>(i) * R.q + e) * R.npad;
      for (int j = 0; j < R.n; ++j) s[j] = F.mul(e, base[j]);
    }
    for (int e = 0; e < R.q; ++e) {
      const std::uint8_t* cur =
          R.srow.data() + (static_cast<size_t>(i) * R.q + e) * R.npad;
      const std::uint8_t* nxt =
          R.srow.data() +
          (static_cast<size_t>(i) * R.q + (e + 1) % R.q) * R.npad;
      std::uint8_t* d =
          R.drow.data() + (static_cast<size_t>(i) * R.q + e) * R.npad;
      for (int j = 0; j < R.n; ++j) d[j] = F.sub(nxt[j], cur[j]);
    }
  }
  return R;
}

struct Chunk {
  std::vector<std::pair<int, int>> fixed;  // (digit index, encoding)
  int free_count = 0;                      // free digits are 0..free_count-1
  std::uint64_t messages = 0;
};

inline std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline std::uint64_t chunk_total(EnumMode mode, int k, int q) {
  if (mode == EnumMode::full) {
    if (k == 1) return 1;
    if (k == 2) return static_cast<std::uint64_t>(q);
    return static_cast<std::uint64_t>(q) * q;
  }
  if (k == 1) return 1;
  if (k == 2) return 2;
  return static_cast<std::uint64_t>(k - 1) +
         static_cast<std::uint64_t>(q) * q;
}

inline Chunk decode_chunk(EnumMode mode, int k, int q, std::uint64_t id) {
  const std::uint64_t uq = static_cast<std::uint64_t>(q);
  Chunk c;
  if (mode == EnumMode::full) {
    if (k == 1) {
      c.free_count = 1;
      c.messages = uq;
    } else if (k == 2) {
      c.fixed = {{1, static_cast<int>(id)}};
      c.free_count = 1;
      c.messages = uq;
    } else {
      c.fixed = {{k - 1, static_cast<int>(id / uq)},
                 {k - 2, static_cast<int>(id % uq)}};
      c.free_count = k - 2;
      c.messages = upow(uq, k - 2);
    }
    return c;
  }
  // projective: one chunk per lower segment, the top segment split by its
  // two most significant free digits
  if (k <= 2 || id < static_cast<std::uint64_t>(k - 1)) {
    const int t = static_cast<int>(id);
    c.fixed = {{t, 1}};
    c.free_count = t;
    c.messages = upow(uq, t);
    return c;
  }
  const std::uint64_t sub = id - (k - 1);
  c.fixed = {{k - 1, 1},
             {k - 2, static_cast<int>(sub / uq)},
             {k - 3, static_cast<int>(sub % uq)}};
  c.free_count = k - 3;
  c.messages = upow(uq, k - 3);
  return c;
}

template <class K>
void process_chunk(const ScaledRows& R, const Chunk& chunk, const K& kernel,
                   std::vector<std::uint64_t>& hist,
                   std::vector<std::uint8_t>& cw, std::vector<int>& digits) {
  const int q = R.q, npad = R.npad;
  std::fill(cw.begin(), cw.end(), 0);
  for (const auto& [idx, val] : chunk.fixed)
    kernel.add(cw.data(), R.s(idx, val), npad);
  digits.assign(chunk.free_count, 0);

  int zeros = 0;
  for (int j = 0; j < npad; ++j) zeros += (cw[j] == 0);
  hist[npad - zeros]++;

  for (std::uint64_t s = 1; s < chunk.messages; ++s) {
    int j = 0;
    while (digits[j] == q - 1) {
      kernel.add(cw.data(), R.d(j, q - 1), npad);
      digits[j] = 0;
      ++j;
    }
    const int z = kernel.add_count(cw.data(), R.d(j, digits[j]), npad);
    ++digits[j];
    hist[npad - z]++;
  }
}

template <class K>
void run_enumeration(const ScaledRows& R, EnumMode mode, const K& kernel,
                     const EnumOptions& opt, std::uint64_t config_hash,
                     std::vector<std::uint64_t>& raw,
                     std::vector<std::uint8_t>& done) {
  const std::uint64_t total = chunk_total(mode, R.k, R.q);
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> cancelled{false};
  std::mutex merge_mtx;
  auto last_cp = std::chrono::steady_clock::now();

  auto snapshot = [&]() {
    EnumCheckpoint cp;
    cp.config_hash = config_hash;
    cp.total_chunks = total;
    cp.histogram = raw;
    for (std::uint64_t i = 0; i < total; ++i)
      if (done[i]) cp.done.push_back(i);
    return cp;
  };

  auto worker = [&]() {
    std::vector<std::uint64_t> hist(R.npad + 1, 0);
    std::vector<std::uint8_t> cw(R.npad, 0);
    std::vector<int> digits;
    while (!stop.load(std::memory_order_relaxed)) {
      if (opt.should_cancel && opt.should_cancel()) {
        cancelled = true;
        stop = true;
        break;
      }
      const std::uint64_t id = next.fetch_add(1);
      if (id >= total) break;
      if (done[id]) continue;
      std::fill(hist.begin(), hist.end(), 0);
      process_chunk(R, decode_chunk(mode, R.k, R.q, id), kernel, hist, cw,
                    digits);
      std::lock_guard<std::mutex> lock(merge_mtx);
      for (size_t w = 0; w <= static_cast<size_t>(R.n); ++w) raw[w] += hist[w];
      done[id] = 1;
      if (opt.on_checkpoint) {
        const auto now = std::chrono::steady_clock::now();
        const double elapsed =
            std::chrono::duration<double>(now - last_cp).count();
        if (elapsed >= opt.checkpoint_interval_s) {
          last_cp = now;
          opt.on_checkpoint(snapshot());
        }
      }
    }
  };

  const int nworkers = std::max(1, opt.workers);
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (int i = 0; i < nworkers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (cancelled) throw EnumCancelled(snapshot());
}

template <class Fn>
void dispatch_kernel(const FieldSpec& F, Fn&& fn) {
  // The fast kernels assume structure of the element encodings; confirm
  // against the addition table before trusting them.
  if (F.p == 2) {
    for (int a = 0; a < F.q; ++a)
      for (int b = 0; b < F.q; ++b)
        if (F.add(a, b) != (a ^ b))
          throw std::logic_error("characteristic-2 encoding is not XOR");
    fn(XorKernel{});
  } else if (F.n == 1) {
    for (int a = 0; a < F.q; ++a)
      for (int b = 0; b < F.q; ++b)
        if (F.add(a, b) != (a + b) % F.q)
          throw std::logic_error("prime-field encoding is not mod-q");
    fn(PrimeKernel{static_cast<std::uint64_t>(F.q)});
  } else {
    fn(TableKernel{F.add_tab.data(), static_cast<std::uint64_t>(F.q)});
  }
}

}  // namespace code_detail

inline WeightEnumerator weight_enumerator(const ToricCode& C,
                                          const EnumOptions& opt) {
  using namespace code_detail;
  const FieldSpec& F = C.field;
  const std::uint64_t hash = enum_config_hash(C, opt.mode);
  const std::uint64_t total = chunk_total(opt.mode, C.k, F.q);

  std::vector<std::uint64_t> raw(C.n + 1, 0);
  std::vector<std::uint8_t> done(total, 0);
  if (opt.resume) {
    const EnumCheckpoint& cp = *opt.resume;
    if (cp.config_hash != hash || cp.total_chunks != total ||
        cp.histogram.size() != raw.size())
      throw std::invalid_argument("checkpoint does not match this run");
    raw = cp.histogram;
    for (std::uint64_t id : cp.done) {
      if (id >= total) throw std::invalid_argument("bad chunk id in checkpoint");
      done[id] = 1;
    }
  }

  const ScaledRows R = build_scaled_rows(C);
  dispatch_kernel(F, [&](const auto& kernel) {
    run_enumeration(R, opt.mode, kernel, opt, hash, raw, done);
  });

  WeightEnumerator W;
  W.counts = std::move(raw);
  if (opt.mode == EnumMode::projective) {
    for (auto& c : W.counts) c *= F.q - 1;
    W.counts[0] += 1;
  }

  std::uint64_t sum = 0;
  for (std::uint64_t c : W.counts) sum += c;
  if (sum != upow(F.q, C.k) || W.counts[0] != 1)
    throw std::logic_error("enumeration self-check failed (total count)");
  for (size_t w = 1; w < W.counts.size(); ++w)
    if (W.counts[w] % (F.q - 1) != 0)
      throw std::logic_error("enumeration self-check failed (divisibility)");
  return W;
}

inline WeightEnumerator weight_enumerator(
    const ToricCode& C, EnumMode mode = EnumMode::projective,
    int workers = 1) {
  EnumOptions opt;
  opt.mode = mode;
  opt.workers = workers;
  return weight_enumerator(C, opt);
}

// Minimum weight over nonzero codewords: projective scan with a running
// minimum, leaving early once the best provable lower bound is reached.
inline std::int64_t min_distance(const ToricCode& C) {
  using namespace code_detail;
  const FieldSpec& F = C.field;

  std::int64_t floor_bound = 1;
  if (C.polygon.dim() == 2) {
    const MinkowskiBounds b = minkowski_bounds(C.polygon, F.q);
    if (b.weak.applicable) floor_bound = std::max(floor_bound, b.weak.value);
    if (b.strong && b.strong->applicable)
      floor_bound = std::max(floor_bound, b.strong->value);
  }

  const ScaledRows R = build_scaled_rows(C);
  const TableKernel kernel{F.add_tab.data(), static_cast<std::uint64_t>(F.q)};
  const std::uint64_t total = chunk_total(EnumMode::projective, C.k, F.q);

  std::int64_t best = C.n;
  std::vector<std::uint8_t> cw(R.npad, 0);
  std::vector<int> digits;
  for (std::uint64_t id = 0; id < total && best > floor_bound; ++id) {
    const Chunk chunk = decode_chunk(EnumMode::projective, C.k, F.q, id);
    std::fill(cw.begin(), cw.end(), 0);
    for (const auto& [idx, val] : chunk.fixed)
      kernel.add(cw.data(), R.s(idx, val), R.npad);
    digits.assign(chunk.free_count, 0);

    int zeros = 0;
    for (int j = 0; j < R.npad; ++j) zeros += (cw[j] == 0);
    best = std::min<std::int64_t>(best, R.npad - zeros);

    for (std::uint64_t s = 1; s < chunk.messages && best > floor_bound; ++s) {
      int j = 0;
      while (digits[j] == F.q - 1) {
        kernel.add(cw.data(), R.d(j, F.q - 1), R.npad);
        digits[j] = 0;
        ++j;
      }
      const int z = kernel.add_count(cw.data(), R.d(j, digits[j]), R.npad);
      ++digits[j];
      best = std::min<std::int64_t>(best, R.npad - z);
    }
  }
  return best;
}

}  // namespace toric
