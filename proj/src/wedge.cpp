#include "bogo/wedge.hpp"

#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace bogo {

namespace {

// Cokernel coordinates of Z^cols / rowspace(a): v -> v V, taken modulo the
// diagonal entries.  Components with d == 1 vanish; d == 0 are free.
struct CokernelMap {
  SmithResult snf;
  int cols = 0;
  BigInt diag(int k) const {
    return k < static_cast<int>(snf.diagonal.size()) ? snf.diagonal[k] : BigInt(0);
  }
  std::vector<BigInt> coords(const std::vector<BigInt>& v) const {
    std::vector<BigInt> out(cols, 0);
    for (int k = 0; k < cols; ++k) {
      BigInt s = 0;
      for (int r = 0; r < cols; ++r)
        if (v[r] != 0) s += v[r] * snf.V(r, k);
      const BigInt d = diag(k);
      out[k] = d == 0 ? s : mod_floor(s, d);
    }
    return out;
  }
};

CokernelMap cokernel_map(const BigMatrix& rows, int cols) {
  CokernelMap m;
  m.cols = cols;
  if (rows.rows() == 0) {
    m.snf.V = BigMatrix::Identity(cols, cols);
    m.snf.V_inverse = BigMatrix::Identity(cols, cols);
    return m;
  }
  m.snf = smith_normal_form(rows, true);
  return m;
}

AbelianInvariants invariants_of(const CokernelMap& m) {
  AbelianInvariants inv;
  for (int k = 0; k < m.cols; ++k) {
    const BigInt d = m.diag(k);
    if (d == 0)
      ++inv.free_rank;
    else if (d != 1)
      inv.torsion.push_back(d);
  }
  return inv;
}

BigMatrix stack_rows(const BigMatrix& a, const std::vector<std::vector<BigInt>>& extra, int cols) {
  BigMatrix out(a.rows() + static_cast<Eigen::Index>(extra.size()), cols);
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (int c = 0; c < cols; ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < extra.size(); ++r)
    for (int c = 0; c < cols; ++c) out(a.rows() + static_cast<Eigen::Index>(r), c) = extra[r][c];
  return out;
}

std::int64_t to_i64(const BigInt& x) { return static_cast<std::int64_t>(x); }

}  // namespace

std::string invariants_text(const AbelianInvariants& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.torsion.size(); ++i) {
    if (i) s += ",";
    s += a.torsion[i].str();
  }
  s += "]";
  if (a.free_rank > 0) s += " + Z^" + std::to_string(a.free_rank);
  return s;
}

// ---------------------------------------------------------------------------

std::vector<BigInt> TailedPresentation::tail_vector(const PcWord& w) const {
  const int n = base.size();
  std::vector<BigInt> v(tails());
  for (int r = 0; r < tails(); ++r) v[r] = w.exps[n + r];
  return v;
}

PcWord TailedPresentation::lift(const PcWord& b) const {
  PcWord w = cover.identity();
  std::copy(b.exps.begin(), b.exps.end(), w.exps.begin());
  return w;
}

TailedPresentation tailed_cover(const PcPresentation& g) {
  if (!g.is_finite()) throw std::invalid_argument("tailed cover needs a finite presentation");
  if (!g.consistency_check().empty())
    throw std::invalid_argument("tailed cover needs a consistent presentation");
  const int n = g.size();
  TailedPresentation t;
  t.base = g;
  std::vector<std::int64_t> orders = g.relative_orders();
  std::vector<std::pair<int, int>> rel;  // (j, i), i < 0 for powers
  for (int i = 0; i < n; ++i) {
    rel.push_back({i, -1});
    t.tail_labels.push_back("pow " + std::to_string(i + 1));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      rel.push_back({j, i});
      t.tail_labels.push_back("conj " + std::to_string(j + 1) + " " + std::to_string(i + 1));
    }
  const int nt = t.tails();
  orders.insert(orders.end(), nt, 0);
  PcPresentation cover(orders, g.name() + "_tailed");
  for (int r = 0; r < nt; ++r) {
    const auto [j, i] = rel[r];
    PcString rhs = i < 0 ? g.power(j) : g.conjugate(j, i);
    rhs.push_back({n + r, 1});
    if (i < 0)
      cover.set_power(j, std::move(rhs));
    else
      cover.set_conjugate(j, i, std::move(rhs));
  }
  t.cover = cover;
  std::vector<std::vector<BigInt>> rows;
  for (const auto& v : cover.consistency_check()) {
    for (int i = 0; i < n; ++i)
      if (v.lhs.exps[i] != v.rhs.exps[i])
        throw std::logic_error("tailed overlap " + v.overlap + " disagrees on the base");
    std::vector<BigInt> row(nt);
    for (int r = 0; r < nt; ++r) row[r] = BigInt(v.lhs.exps[n + r]) - v.rhs.exps[n + r];
    rows.push_back(std::move(row));
  }
  t.relations = stack_rows(BigMatrix(0, nt), rows, nt);
  return t;
}

AbelianInvariants schur_multiplier(const PcPresentation& g) {
  TailedPresentation t = tailed_cover(g);
  AbelianInvariants inv = cokernel_invariants(t.relations, t.tails());
  inv.free_rank = 0;  // the free part is R/(R ∩ [F,F]); M(G) is the torsion
  return inv;
}

AbelianInvariants abelian_invariants(const PcPresentation& g) {
  const int n = g.size();
  std::vector<std::vector<BigInt>> rows;
  auto vec = [&](const PcString& w) {
    std::vector<BigInt> v(n, 0);
    for (const auto& s : w) v[s.gen] += s.exp;
    return v;
  };
  for (int i = 0; i < n; ++i) {
    if (g.relative_order(i) == 0) continue;
    auto v = vec(g.power(i));
    for (auto& x : v) x = -x;
    v[i] += g.relative_order(i);
    rows.push_back(std::move(v));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto v = vec(g.conjugate(j, i));
      v[j] -= 1;
      rows.push_back(std::move(v));
    }
  return cokernel_invariants(stack_rows(BigMatrix(0, n), rows, n), n);
}

// ---------------------------------------------------------------------------

std::vector<CommutingPair> commuting_pairs(const PcPresentation& g, std::int64_t exhaustive_limit) {
  const auto els = g.elements();
  const auto size = static_cast<std::int64_t>(els.size());
  std::vector<CommutingPair> out;
  if (size <= exhaustive_limit) {
    for (std::int64_t a = 0; a < size; ++a)
      for (std::int64_t b = a; b < size; ++b)
        if (g.multiply(els[a], els[b]) == g.multiply(els[b], els[a])) out.push_back({els[a], els[b]});
    return out;
  }
  // Centralizer walk: b -> [a~, b~] is a homomorphism on C(a) and invariant
  // under simultaneous conjugation, so class representatives and generators
  // of their centralizers suffice.
  std::vector<char> seen(size, 0);
  for (std::int64_t a = 0; a < size; ++a) {
    if (seen[a]) continue;
    std::vector<std::int64_t> orbit{a};
    seen[a] = 1;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (int i = 0; i < g.size(); ++i) {
        const auto c = g.index_of(g.conjugate(els[orbit[k]], g.generator(i)));
        if (!seen[c]) {
          seen[c] = 1;
          orbit.push_back(c);
        }
      }
    std::vector<PcWord> cent;
    for (const auto& x : els)
      if (g.multiply(els[a], x) == g.multiply(x, els[a])) cent.push_back(x);
    InducedSequence c(g, cent);
    for (const auto& y : c.pivots()) out.push_back({els[a], y});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> hypothesis_tags(const PcPresentation& g) {
  std::vector<std::string> tags;
  InducedSequence d = derived_subgroup(g);
  if (is_abelian(d.subgroup_presentation())) tags.push_back("metabelian");
  if (nilpotency_class(g) <= 5) tags.push_back("class<=5");
  if (exponent(g) == 4) tags.push_back("exponent4");
  const auto els = g.elements();
  bool engel = true;
  for (std::size_t a = 0; a < els.size() && engel; ++a)
    for (std::size_t b = 0; b < els.size() && engel; ++b) {
      PcWord c = els[a];
      for (int k = 0; k < 4; ++k) c = g.commutator(c, els[b]);
      engel = c.is_identity();
    }
  if (engel) tags.push_back("4-engel");
  return tags;
}

WedgeResult curly_wedge(const PcPresentation& g) {
  const auto t0 = std::chrono::steady_clock::now();
  WedgeResult res;
  res.name = g.name();
  res.group_order = g.order();
  const int n = g.size();

  TailedPresentation tc = tailed_cover(g);
  const int nt = tc.tails();
  CokernelMap mu = cokernel_map(tc.relations, nt);
  res.multiplier = invariants_of(mu);
  res.multiplier_free_rank_ok = res.multiplier.free_rank == n;
  res.multiplier.free_rank = 0;

  // Commuting-pair lift commutators, deduplicated by their class modulo the
  // consistency relations.
  const auto pairs = commuting_pairs(g);
  res.commuting_pairs = pairs.size();
  res.reduced_pairs = g.order() > (1 << 10);
  std::map<std::vector<BigInt>, std::vector<BigInt>> cp;
  auto lift_comm = [&](const CommutingPair& p) {
    PcWord c = tc.cover.commutator(tc.lift(p.a), tc.lift(p.b));
    for (int i = 0; i < n; ++i)
      if (c.exps[i] != 0) throw std::logic_error("commuting pair does not commute");
    return tc.tail_vector(c);
  };
  for (const auto& p : pairs) {
    auto v = lift_comm(p);
    auto key = mu.coords(v);
    for (int k = 0; k < nt; ++k)
      if (mu.diag(k) == 0 && key[k] != 0)
        throw std::logic_error("commutator lift has a free tail component");
    cp.emplace(std::move(key), std::move(v));
  }
  std::vector<std::vector<BigInt>> cp_rows;
  for (auto& [k, v] : cp) cp_rows.push_back(v);
  const BigMatrix all = stack_rows(tc.relations, cp_rows, nt);
  CokernelMap bz = cokernel_map(all, nt);
  res.b0 = invariants_of(bz);
  res.b0.free_rank = 0;

  if (res.reduced_pairs) {
    // the reduction is exact, but re-check it on a sample of arbitrary pairs
    const auto els = g.elements();
    std::mt19937_64 rng(7);
    for (int s = 0, hits = 0; s < 20000 && hits < 256; ++s) {
      const auto& a = els[rng() % els.size()];
      const auto& b = els[rng() % els.size()];
      if (!(g.multiply(a, b) == g.multiply(b, a))) continue;
      ++hits;
      auto c = bz.coords(lift_comm({a, b}));
      for (int k = 0; k < nt; ++k)
        if (c[k] != 0) throw std::logic_error("centralizer-walk pair reduction is insufficient");
    }
  }

  // CP cover H: base generators plus one central generator per nontrivial
  // torsion component; the free components are cut away (stem extension).
  std::vector<int> comp;
  std::vector<std::int64_t> orders = g.relative_orders();
  for (int k = 0; k < nt; ++k)
    if (bz.diag(k) > 1) {
      comp.push_back(k);
      orders.push_back(to_i64(bz.diag(k)));
    }
  PcPresentation h(orders, g.name() + "_cp");
  auto tail_part = [&](int r) {
    std::vector<BigInt> unit(nt, 0);
    unit[r] = 1;
    auto c = bz.coords(unit);
    PcString s;
    for (std::size_t m = 0; m < comp.size(); ++m)
      if (c[comp[m]] != 0) s.push_back({n + static_cast<int>(m), to_i64(c[comp[m]])});
    return s;
  };
  {
    int r = 0;
    for (int i = 0; i < n; ++i, ++r) {
      PcString rhs = g.power(i);
      auto tp = tail_part(r);
      rhs.insert(rhs.end(), tp.begin(), tp.end());
      h.set_power(i, std::move(rhs));
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++r) {
        PcString rhs = g.conjugate(j, i);
        auto tp = tail_part(r);
        rhs.insert(rhs.end(), tp.begin(), tp.end());
        h.set_conjugate(j, i, std::move(rhs));
      }
  }
  if (!h.consistency_check().empty()) throw std::logic_error("CP cover is inconsistent");
  res.cp_cover = h;

  res.cp_lifts_commute = true;
  for (const auto& p : pairs) {
    PcWord a = h.identity(), b = h.identity();
    std::copy(p.a.exps.begin(), p.a.exps.end(), a.exps.begin());
    std::copy(p.b.exps.begin(), p.b.exps.end(), b.exps.begin());
    if (!h.commutator(a, b).is_identity()) {
      res.cp_lifts_commute = false;
      break;
    }
  }

  // Path (i): the kernel of H -> G intersected with [H,H], read off from H.
  InducedSequence dh = derived_subgroup(h);
  std::vector<PcWord> kernel_part;
  for (const auto& y : dh.pivots())
    if (y.depth() >= n) kernel_part.push_back(y);
  InducedSequence z(h, kernel_part);
  res.b0_cover = abelian_invariants(z.subgroup_presentation());
  res.stem = z.order() == BigInt(h.order() / g.order());
  res.crosscheck = res.b0_cover.torsion == res.b0.torsion && res.b0_cover.free_rank == 0;

  res.curly_wedge = dh.subgroup_presentation(g.name() + "_wedge");
  res.wedge_order = dh.order();
  res.derived_order = derived_subgroup(g).order();
  res.kappa_identity = res.wedge_order == res.b0.order() * res.derived_order;

  res.exp_g = exponent(g);
  res.exp_wedge = exponent(res.curly_wedge);
  res.exp_b0 = res.b0.torsion.empty() ? 1 : to_i64(res.b0.torsion.back());
  res.b0_divides = res.exp_g % res.exp_b0 == 0;
  res.wedge_divides = res.exp_g % res.exp_wedge == 0;
  res.tags = hypothesis_tags(g);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

AbelianInvariants bogomolov(const PcPresentation& g) { return curly_wedge(g).b0; }

bool b0_crosscheck(const PcPresentation& g) { return curly_wedge(g).crosscheck; }

DivisibilityReport divisibility_report(const PcPresentation& g) {
  const WedgeResult w = curly_wedge(g);
  return {w.exp_g, w.exp_wedge, w.exp_b0, w.b0_divides, w.wedge_divides, w.tags};
}

}  // namespace bogo
