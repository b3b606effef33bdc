#pragma once
// Independent reference computations used by the tests.  Nothing here calls
// the collector, the Magnus engine or the wedge pipeline; groups are given by
// explicit multiplication tables built from permutations or quaternions.

#include "bogo/bigint.hpp"
#include "bogo/smith.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using bogo::BigInt;
using bogo::BigMatrix;

// A finite group as a table; element 0 is the identity.
struct Table {
  int n = 0;
  std::vector<int> mul;
  int op(int a, int b) const { return mul[a * n + b]; }
  int inv(int a) const {
    for (int b = 0; b < n; ++b)
      if (op(a, b) == 0) return b;
    return -1;
  }
};

// Closure of elements of an arbitrary monoid under multiplication; `one`
// becomes element 0.
template <class E, class Mul>
Table closure_table(const E& one, const std::vector<E>& gens, Mul mul) {
  std::vector<E> elems{one};
  std::map<E, int> index{{one, 0}};
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const auto& g : gens) {
      E x = mul(elems[k], g);
      if (!index.count(x)) {
        index[x] = static_cast<int>(elems.size());
        elems.push_back(x);
      }
    }
  Table t;
  t.n = static_cast<int>(elems.size());
  t.mul.resize(static_cast<std::size_t>(t.n) * t.n);
  for (int a = 0; a < t.n; ++a)
    for (int b = 0; b < t.n; ++b) t.mul[a * t.n + b] = index.at(mul(elems[a], elems[b]));
  return t;
}

using Perm = std::vector<int>;
// (p*q)(x) = q(p(x)): apply p first.
inline Perm compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[x] = q[p[x]];
  return r;
}
inline Table permutation_group(const std::vector<Perm>& gens) {
  Perm id(gens.at(0).size());
  std::iota(id.begin(), id.end(), 0);
  return closure_table(id, gens, compose);
}

inline Table dihedral(int m) {  // order 2m, acting on an m-gon
  Perm r(m), s(m);
  for (int i = 0; i < m; ++i) {
    r[i] = (i + 1) % m;
    s[i] = (m - i) % m;
  }
  return permutation_group({r, s});
}

inline Table cyclic_product(const std::vector<int>& orders) {
  using V = std::vector<int>;
  std::vector<V> gens;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    V g(orders.size(), 0);
    g[i] = 1;
    gens.push_back(g);
  }
  return closure_table(V(orders.size(), 0), gens, [&](const V& a, const V& b) {
    V r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % orders[i];
    return r;
  });
}

// Integer quaternions: Q8 = <i, j>.
using Quat = std::array<int, 4>;
inline Quat qmul(const Quat& x, const Quat& y) {
  return {x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
          x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
          x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
          x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0]};
}
inline Table quaternion8() { return closure_table(Quat{1, 0, 0, 0}, {Quat{0, 1, 0, 0}, Quat{0, 0, 1, 0}}, qmul); }

// Upper unitriangular 3x3 matrices mod p (Heisenberg group, order p^3).
inline Table heisenberg(int p) {
  using M = std::array<int, 3>;  // (x, y, z) <-> [[1,x,z],[0,1,y],[0,0,1]]
  return closure_table(M{0, 0, 0}, {M{1, 0, 0}, M{0, 1, 0}}, [p](const M& a, const M& b) {
    return M{(a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2] + a[0] * b[1]) % p};
  });
}

inline int element_order(const Table& t, int x) {
  int k = 1;
  for (int y = x; y != 0; y = t.op(y, x)) ++k;
  return k;
}

inline std::int64_t exponent(const Table& t) {
  std::int64_t e = 1;
  for (int x = 0; x < t.n; ++x) e = std::lcm(e, static_cast<std::int64_t>(element_order(t, x)));
  return e;
}

inline std::map<int, int> order_statistics(const Table& t) {
  std::map<int, int> m;
  for (int x = 0; x < t.n; ++x) ++m[element_order(t, x)];
  return m;
}

inline int commutator(const Table& t, int a, int b) {
  return t.op(t.op(t.inv(a), t.inv(b)), t.op(a, b));
}

// Unordered pairs {a, b} (a == b allowed) with ab = ba.
inline int commuting_pairs(const Table& t) {
  int c = 0;
  for (int a = 0; a < t.n; ++a)
    for (int b = a; b < t.n; ++b) c += t.op(a, b) == t.op(b, a);
  return c;
}

inline std::vector<char> subgroup(const Table& t, const std::vector<int>& gens) {
  std::vector<char> in(t.n, 0);
  std::vector<int> q{0};
  in[0] = 1;
  for (std::size_t k = 0; k < q.size(); ++k)
    for (int g : gens) {
      int x = t.op(q[k], g);
      if (!in[x]) {
        in[x] = 1;
        q.push_back(x);
      }
    }
  return in;
}

inline int derived_order(const Table& t) {
  std::vector<int> gens;
  for (int a = 0; a < t.n; ++a)
    for (int b = 0; b < t.n; ++b) gens.push_back(commutator(t, a, b));
  auto in = subgroup(t, gens);
  return static_cast<int>(std::count(in.begin(), in.end(), 1));
}

inline int center_order(const Table& t) {
  int z = 0;
  for (int a = 0; a < t.n; ++a) {
    bool c = true;
    for (int b = 0; b < t.n && c; ++b) c = t.op(a, b) == t.op(b, a);
    z += c;
  }
  return z;
}

// Second integral homology from the normalized bar complex:
//   d[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h].
// Since C_2 / ker d_2 is free, H_2(G) is the torsion of coker d_3.  With
// `abelian_cycles`, the cycles [a|b] - [b|a] for commuting a, b are also
// divided out; what remains is H_2(G) modulo the images of the abelian
// subgroups, i.e. the Bogomolov multiplier.
inline bogo::AbelianInvariants bar_h2(const Table& t, bool abelian_cycles = false) {
  const int m = t.n - 1;
  auto idx = [m](int g, int h) { return (g - 1) * m + (h - 1); };
  std::vector<std::map<int, int>> rows;
  for (int g = 1; g < t.n; ++g)
    for (int h = 1; h < t.n; ++h)
      for (int k = 1; k < t.n; ++k) {
        std::map<int, int> r;
        auto add = [&](int a, int b, int s) {
          if (a != 0 && b != 0) r[idx(a, b)] += s;
        };
        add(h, k, 1);
        add(t.op(g, h), k, -1);
        add(g, t.op(h, k), 1);
        add(g, h, -1);
        std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
        if (!r.empty()) rows.push_back(std::move(r));
      }
  if (abelian_cycles)
    for (int a = 1; a < t.n; ++a)
      for (int b = a + 1; b < t.n; ++b)
        if (t.op(a, b) == t.op(b, a)) rows.push_back({{idx(a, b), 1}, {idx(b, a), -1}});
  // Rows are highly redundant; reduce them modulo 2-cycles of the image by a
  // simple pre-elimination before the Smith form: keep an integer echelon.
  std::map<int, std::map<int, BigInt>> echelon;  // pivot column -> row with pivot coefficient > 0
  for (const auto& r0 : rows) {
    std::map<int, BigInt> r;
    for (const auto& [c, v] : r0) r[c] = v;
    while (!r.empty()) {
      auto [c, v] = *r.begin();
      auto it = echelon.find(c);
      if (it == echelon.end()) {
        if (v < 0)
          for (auto& kv : r) kv.second = -kv.second;
        echelon[c] = std::move(r);
        break;
      }
      auto& p = it->second;
      const BigInt pv = p.at(c);
      if (v % pv == 0) {
        const BigInt q = v / pv;
        for (const auto& [pc, pvv] : p) r[pc] -= q * pvv;
      } else {
        // gcd step: replace pivot row by the combination with gcd leading term
        auto [g, s, u] = bogo::ext_gcd(pv, v);
        std::map<int, BigInt> np, nr;
        for (const auto& [pc, pvv] : p) np[pc] += s * pvv, nr[pc] += (-v / g) * pvv;
        for (const auto& [rc, rv] : r) np[rc] += u * rv, nr[rc] += (pv / g) * rv;
        p.clear();
        for (auto& [k, x] : np)
          if (x != 0) p[k] = x;
        r.clear();
        for (auto& [k, x] : nr)
          if (x != 0) r[k] = x;
        continue;
      }
      std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    }
  }
  BigMatrix a = BigMatrix::Zero(static_cast<Eigen::Index>(echelon.size()), m * m);
  int i = 0;
  for (const auto& [c, r] : echelon) {
    for (const auto& [col, v] : r) a(i, col) = v;
    ++i;
  }
  auto inv = bogo::cokernel_invariants(a, m * m);
  inv.free_rank = 0;  // free part is C_2 / ker d_2, not homology
  return inv;
}

// Number of necklace classes of aperiodic words of length w over k letters
// (Lyndon words), counted by brute force.
inline long long lyndon_words(int k, int w) {
  long long total = 1;
  for (int i = 0; i < w; ++i) total *= k;
  long long count = 0;
  std::vector<int> s(w);
  for (long long code = 0; code < total; ++code) {
    long long x = code;
    for (int i = 0; i < w; ++i) {
      s[i] = static_cast<int>(x % k);
      x /= k;
    }
    bool lyndon = true;  // strictly smaller than every proper rotation
    for (int r = 1; r < w && lyndon; ++r) {
      for (int i = 0; i < w; ++i) {
        const int a = s[i], b = s[(i + r) % w];
        if (a != b) {
          if (a > b) lyndon = false;
          break;
        }
        if (i == w - 1) lyndon = false;  // periodic
      }
    }
    count += lyndon;
  }
  return count;
}

// Free associative algebra over Z: noncommutative polynomials keyed by words
// over the letters 'a', 'b', ...; [x, y] = xy - yx.
using Poly = std::map<std::string, BigInt>;
inline Poly letter(char c) { return {{std::string(1, c), 1}}; }
inline Poly padd(const Poly& x, const Poly& y, const BigInt& s = 1) {
  Poly r = x;
  for (const auto& [w, v] : y) r[w] += s * v;
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}
inline Poly pmul(const Poly& x, const Poly& y) {
  Poly r;
  for (const auto& [u, a] : x)
    for (const auto& [v, b] : y) r[u + v] += a * b;
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}
inline Poly lie(const Poly& x, const Poly& y) { return padd(pmul(x, y), pmul(y, x), -1); }
inline Poly left_normed(const std::vector<Poly>& xs) {
  Poly r = xs.at(0);
  for (std::size_t i = 1; i < xs.size(); ++i) r = lie(r, xs[i]);
  return r;
}

}  // namespace oracle
