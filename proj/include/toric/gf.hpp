#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toric {

// An element of F_q encoded as an integer in [0, q): for prime fields the
// residue itself, otherwise the base-p digit vector of the polynomial
// representative (digit i = coefficient of t^i). 0 always encodes the
// additive identity and 1 the multiplicative identity.
using FieldElement = int;

namespace gf_detail {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Polynomials over F_p as coefficient vectors, constant term first.
// Leading zeros are allowed; degree is the last nonzero index.
inline int poly_deg(const std::vector<int>& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

inline std::vector<int> poly_mul(const std::vector<int>& a,
                                 const std::vector<int>& b, int p) {
  if (a.empty() || b.empty()) return {};
  std::vector<int> c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return c;
}

// Remainder of a modulo monic m.
inline std::vector<int> poly_rem(std::vector<int> a, const std::vector<int>& m,
                                 int p) {
  const int dm = poly_deg(m);
  for (int da = poly_deg(a); da >= dm; da = poly_deg(a)) {
    const int c = a[da];
    for (int i = 0; i <= dm; ++i) {
      a[da - dm + i] = ((a[da - dm + i] - c * m[i]) % p + p) % p;
    }
  }
  return a;
}

inline bool poly_is_irreducible(const std::vector<int>& m, int p) {
  const int n = poly_deg(m);
  if (n < 1) return false;
  // trial division by every monic polynomial of degree 1..n/2
  for (int d = 1; 2 * d <= n; ++d) {
    int count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (int idx = 0; idx < count; ++idx) {
      std::vector<int> cand(d + 1, 0);
      int v = idx;
      for (int i = 0; i < d; ++i) {
        cand[i] = v % p;
        v /= p;
      }
      cand[d] = 1;
      if (poly_deg(poly_rem(m, cand, p)) < 0) return false;
    }
  }
  return true;
}

inline std::vector<int> encode_digits(int value, int p, int n) {
  std::vector<int> d(n, 0);
  for (int i = 0; i < n; ++i) {
    d[i] = value % p;
    value /= p;
  }
  return d;
}

inline int decode_digits(const std::vector<int>& d, int p, int n) {
  int v = 0;
  for (int i = n - 1; i >= 0; --i) v = v * p + (i < static_cast<int>(d.size()) ? d[i] : 0);
  return v;
}

inline const std::vector<int>* default_modulus(int q) {
  // fixed irreducible polynomials, constant term first, monic
  static const std::vector<std::pair<int, std::vector<int>>> table = {
      {4, {1, 1, 1}},           // t^2 + t + 1
      {8, {1, 1, 0, 1}},        // t^3 + t + 1
      {9, {1, 0, 1}},           // t^2 + 1
      {16, {1, 1, 0, 0, 1}},    // t^4 + t + 1
      {25, {2, 1, 1}},          // t^2 + t + 2
      {27, {1, 2, 0, 1}},       // t^3 + 2t + 1
      {32, {1, 0, 1, 0, 0, 1}}, // t^5 + t^2 + 1
      {49, {3, 1, 1}},          // t^2 + t + 3
      {64, {1, 1, 0, 0, 0, 0, 1}}, // t^6 + t + 1
  };
  for (const auto& [qq, m] : table)
    if (qq == q) return &m;
  return nullptr;
}

}  // namespace gf_detail

// Arithmetic tables for F_q, q = p^n with 4 <= q <= 64. Immutable after
// construction; all operations are pure lookups and safe to share across
// threads.
struct FieldSpec {
  int p = 0;
  int n = 0;
  int q = 0;
  std::vector<int> modulus;          // empty when n == 1, else n+1 coefficients,
                                     // constant term first, monic
  FieldElement generator = 0;        // smallest encoding of multiplicative order q-1
  std::vector<int> log_tab;          // size q; log_tab[0] = -1
  std::vector<FieldElement> exp_tab; // size 2(q-1); exp_tab[i] = generator^i
  std::vector<std::uint8_t> add_tab; // q*q row-major: a*q + b
  std::vector<std::uint8_t> sub_tab;
  std::vector<std::uint8_t> mul_tab;
  std::vector<std::uint8_t> inv_tab; // inv_tab[0] = 0 (unused)

  FieldElement add(FieldElement a, FieldElement b) const {
    return add_tab[static_cast<size_t>(a) * q + b];
  }
  FieldElement sub(FieldElement a, FieldElement b) const {
    return sub_tab[static_cast<size_t>(a) * q + b];
  }
  FieldElement neg(FieldElement a) const { return sub_tab[a]; /* 0 - a */ }
  FieldElement mul(FieldElement a, FieldElement b) const {
    return mul_tab[static_cast<size_t>(a) * q + b];
  }
  FieldElement inv(FieldElement a) const {
    if (a == 0) throw std::domain_error("division by zero in F_q");
    return inv_tab[a];
  }
  // generator^e for any integer e (e may be negative)
  FieldElement pow_gen(long long e) const {
    const int m = q - 1;
    long long r = e % m;
    if (r < 0) r += m;
    return exp_tab[static_cast<size_t>(r)];
  }
  bool valid(FieldElement a) const { return 0 <= a && a < q; }
};

// Builds F_q = F_p[t]/(modulus). The default modulus per (p, n) is a fixed
// built-in; a custom modulus must be monic of degree n with coefficients in
// [0, p). Irreducibility is verified by trial division against all monic
// polynomials of degree <= n/2.
inline FieldSpec make_field(int p, int n, std::vector<int> modulus = {}) {
  using namespace gf_detail;
  if (!is_prime(p)) throw std::invalid_argument("p is not prime");
  if (n < 1) throw std::invalid_argument("n must be positive");
  long long qll = 1;
  for (int i = 0; i < n; ++i) {
    qll *= p;
    if (qll > 64) throw std::invalid_argument("q exceeds the supported limit 64");
  }
  const int q = static_cast<int>(qll);
  if (q < 4) throw std::invalid_argument("q below the supported minimum 4");

  FieldSpec F;
  F.p = p;
  F.n = n;
  F.q = q;

  if (n == 1) {
    if (!modulus.empty())
      throw std::invalid_argument("prime fields take no modulus");
  } else {
    if (modulus.empty()) {
      const std::vector<int>* def = default_modulus(q);
      if (def == nullptr)
        throw std::invalid_argument("no built-in modulus for this q");
      modulus = *def;
    }
    if (static_cast<int>(modulus.size()) != n + 1 || modulus[n] != 1)
      throw std::invalid_argument("modulus must be monic of degree n");
    for (int c : modulus)
      if (c < 0 || c >= p)
        throw std::invalid_argument("modulus coefficients must lie in [0, p)");
    if (!poly_is_irreducible(modulus, p))
      throw std::invalid_argument("modulus is reducible over F_p");
    F.modulus = modulus;
  }

  // raw arithmetic on encodings, used only to build the tables
  auto raw_add = [&](int a, int b) {
    if (n == 1) return (a + b) % p;
    int r = 0, pw = 1;
    for (int i = 0; i < n; ++i) {
      r += ((a % p + b % p) % p) * pw;
      a /= p;
      b /= p;
      pw *= p;
    }
    return r;
  };
  auto raw_mul = [&](int a, int b) {
    if (n == 1) return (a * b) % p;
    auto prod = poly_mul(encode_digits(a, p, n), encode_digits(b, p, n), p);
    return decode_digits(poly_rem(std::move(prod), F.modulus, p), p, n);
  };

  // generator: smallest encoding with multiplicative order exactly q-1
  for (int cand = 2; cand < q; ++cand) {
    int x = cand, order = 1;
    while (x != 1) {
      x = raw_mul(x, cand);
      ++order;
      if (order > q) throw std::logic_error("order computation diverged");
    }
    if (order == q - 1) {
      F.generator = cand;
      break;
    }
  }
  if (F.generator == 0) throw std::logic_error("no generator found");

  F.exp_tab.assign(2 * (q - 1), 0);
  F.log_tab.assign(q, -1);
  int x = 1;
  for (int i = 0; i < q - 1; ++i) {
    F.exp_tab[i] = x;
    F.exp_tab[i + q - 1] = x;
    F.log_tab[x] = i;
    x = raw_mul(x, F.generator);
  }
  if (x != 1) throw std::logic_error("generator order mismatch");

  F.add_tab.assign(static_cast<size_t>(q) * q, 0);
  F.sub_tab.assign(static_cast<size_t>(q) * q, 0);
  F.mul_tab.assign(static_cast<size_t>(q) * q, 0);
  F.inv_tab.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      const int s = raw_add(a, b);
      F.add_tab[static_cast<size_t>(a) * q + b] = static_cast<std::uint8_t>(s);
      F.mul_tab[static_cast<size_t>(a) * q + b] =
          static_cast<std::uint8_t>(raw_mul(a, b));
    }
  }
  // subtraction from the addition table: sub[a][b] = c with c + b = a
  for (int b = 0; b < q; ++b) {
    for (int c = 0; c < q; ++c) {
      const int a = F.add_tab[static_cast<size_t>(c) * q + b];
      F.sub_tab[static_cast<size_t>(a) * q + b] = static_cast<std::uint8_t>(c);
    }
  }
  for (int a = 1; a < q; ++a) {
    const int l = F.log_tab[a];
    F.inv_tab[a] = static_cast<std::uint8_t>(F.exp_tab[(q - 1 - l) % (q - 1)]);
  }
  return F;
}

// Convenience: build F_q from q alone (unique (p, n) factorization).
inline FieldSpec make_field_q(int q, std::vector<int> modulus = {}) {
  for (int p = 2; p <= q; ++p) {
    if (!gf_detail::is_prime(p) || q % p != 0) continue;
    int n = 0, v = q;
    while (v % p == 0) {
      v /= p;
      ++n;
    }
    if (v != 1) break;  // not a prime power
    return make_field(p, n, std::move(modulus));
  }
  throw std::invalid_argument("q is not a prime power");
}

// Range-checked free functions mirroring the member operations.
inline FieldElement add(const FieldSpec& F, FieldElement a, FieldElement b) {
  if (!F.valid(a) || !F.valid(b)) throw std::invalid_argument("element out of range");
  return F.add(a, b);
}
inline FieldElement sub(const FieldSpec& F, FieldElement a, FieldElement b) {
  if (!F.valid(a) || !F.valid(b)) throw std::invalid_argument("element out of range");
  return F.sub(a, b);
}
inline FieldElement mul(const FieldSpec& F, FieldElement a, FieldElement b) {
  if (!F.valid(a) || !F.valid(b)) throw std::invalid_argument("element out of range");
  return F.mul(a, b);
}
inline FieldElement inv(const FieldSpec& F, FieldElement a) {
  if (!F.valid(a)) throw std::invalid_argument("element out of range");
  return F.inv(a);
}

// All (q-1)^2 points of the torus (F_q^*)^2, ordered row-major by
// (g^i, g^j) with i, j in [0, q-2]. This order is fixed: it defines the
// generator-matrix column order everywhere downstream.
inline std::vector<std::pair<FieldElement, FieldElement>> torus_points(
    const FieldSpec& F) {
  std::vector<std::pair<FieldElement, FieldElement>> pts;
  pts.reserve(static_cast<size_t>(F.q - 1) * (F.q - 1));
  for (int i = 0; i < F.q - 1; ++i)
    for (int j = 0; j < F.q - 1; ++j)
      pts.emplace_back(F.exp_tab[i], F.exp_tab[j]);
  return pts;
}

}  // namespace toric
