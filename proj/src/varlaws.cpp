#include "bogo/varlaws.hpp"

#include "bogo/magnus.hpp"
#include "bogo/smith.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <variant>

namespace bogo {

Law make_law(const std::string& name, const std::string& text) {
  static const std::vector<std::string> indexed = {"x1", "x2", "x3", "x4", "x5",
                                                   "x6", "x7", "x8", "x9"};
  static const std::vector<std::string> letters = {"x", "y", "z", "w"};
  const bool use_indexed = text.find("x1") != std::string::npos;
  Law law;
  law.name = name;
  law.text = text;
  law.expression = parse_word(text, use_indexed ? indexed : letters);
  law.arity = arity(law.expression);
  return law;
}

// ------------------------------------------------------------ instance tuples

namespace {

void enumerate_points(const BasisTable& b, int start, int budget, Syllables& cur,
                      std::vector<Syllables>& out) {
  for (int i = start; i < b.size(); ++i) {
    const int w = b.weight(i);
    if (w > budget) break;
    for (int t = 1; t * w <= budget; ++t) {
      cur.emplace_back(i, BigInt(t));
      out.push_back(cur);
      enumerate_points(b, i + 1, budget - t * w, cur, out);
      cur.pop_back();
    }
  }
}

int point_size(const BasisTable& b, const Syllables& p) {
  int s = 0;
  for (const auto& [i, e] : p) s += b.weight(i) * static_cast<int>(abs(e));
  return s;
}

}  // namespace

std::vector<std::vector<Syllables>> instance_tuples(const FreeNilpotentGroup& g, int arity,
                                                    int depth, InstanceStrategy strategy,
                                                    int samples, std::uint64_t seed) {
  const BasisTable& b = g.basis();
  if (strategy == InstanceStrategy::Explicit)
    throw std::invalid_argument("explicit instances come from ClosureOptions::tuples");
  if (strategy == InstanceStrategy::RandomWords) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(1, std::max(1, depth));
    std::uniform_int_distribution<int> letter(0, 2 * g.generator_count() - 1);
    std::vector<std::vector<Syllables>> out;
    for (int s = 0; s < samples; ++s) {
      std::vector<Syllables> tuple;
      for (int v = 0; v < arity; ++v) {
        Syllables w;
        for (int l = len(rng); l > 0; --l) {
          const int x = letter(rng);
          w = g.mul(w, {{x / 2, BigInt(x % 2 ? -1 : 1)}});
        }
        tuple.push_back(std::move(w));
      }
      out.push_back(std::move(tuple));
    }
    return out;
  }
  std::vector<std::pair<int, Syllables>> values;  // (size, value)
  if (arity == 0) return {{}};
  if (strategy == InstanceStrategy::WeightedSimplex) {
    std::vector<Syllables> pts;
    Syllables cur;
    enumerate_points(b, 0, depth - (arity - 1), cur, pts);
    for (auto& p : pts) values.emplace_back(point_size(b, p), std::move(p));
  } else {
    for (int i = 0; i < b.size(); ++i) {
      for (int ei : {1, -1}) {
        if (b.weight(i) <= depth) values.emplace_back(b.weight(i), Syllables{{i, BigInt(ei)}});
        for (int j = 0; j < b.size(); ++j) {
          if (b.weight(i) + b.weight(j) > depth) continue;
          for (int ej : {1, -1})
            values.emplace_back(b.weight(i) + b.weight(j),
                                g.word({{i, BigInt(ei)}, {j, BigInt(ej)}}).syllables());
        }
      }
    }
  }
  std::stable_sort(values.begin(), values.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::vector<Syllables>> out;
  std::vector<Syllables> cur;
  std::function<void(int, int)> rec = [&](int var, int budget) {
    if (var == arity) {
      out.push_back(cur);
      return;
    }
    const int reserve = arity - var - 1;
    for (const auto& [s, v] : values) {
      if (s + reserve > budget) break;
      cur.push_back(v);
      rec(var + 1, budget - s);
      cur.pop_back();
    }
  };
  rec(0, depth);
  // Low total weight first: these generate most of the closure.
  std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    int sx = 0, sy = 0;
    for (const auto& p : x) sx += point_size(b, p);
    for (const auto& p : y) sy += point_size(b, p);
    return sx < sy;
  });
  return out;
}

// ---------------------------------------------------------------- internals

namespace {

struct Node {
  enum class Kind { Instance, Relation, CommGen, Comm, Product, Root };
  Kind kind = Kind::Product;
  int law = -1;
  std::vector<Syllables> point;
  int relation = -1;
  int a = -1, b = -1, gen = -1;
  std::vector<CertificateTerm> factors;
  BigInt root_exponent;
  Syllables root_value;
};

template <class S>
struct Pivot {
  TensorSeries<S> elem;
  std::vector<S> coords;  // layer coordinates
  S lead;
  int node = -1;
  int layer = 0;
  std::vector<S> lat;  // full coordinates from lattice_base, for abelian layers
};

// Layers d with 2d > c generate an abelian subgroup in which the Magnus map
// is additive, so reduction there is plain integer row reduction on Hall
// coordinates.
inline int abelian_layer(int c) { return c / 2 + 1; }

template <class S>
std::vector<S> lattice_coords(const MagnusBasis& M, TensorSeries<S> g) {
  using T = ScalarTraits<S>;
  const BasisTable& B = M.group().basis();
  const int c = B.class_bound(), d0 = abelian_layer(c), base = B.layer_begin(d0);
  std::vector<S> y(B.size() - base, S(0));
  for (int e = d0; e <= c; ++e) {
    if (g.block(e).isZero()) continue;
    std::vector<S> xe = M.layer_coords(g, e);
    for (int t = 0; t < static_cast<int>(xe.size()); ++t) {
      if (xe[t] == S(0)) continue;
      const int u = B.layer_begin(e) + t;
      y[u - base] = xe[t];
      // only degrees above e matter for the remaining layers
      for (const auto& [w, a] : M.sparse_image(u))
        if (w >= M.shape()->begin(e + 1)) g.coeffs()[w] = T::add(g.coeffs()[w], T::mul(S(-a), xe[t]));
    }
  }
  return y;
}

template <class S>
TensorSeries<S> lattice_element(const MagnusBasis& M, const std::vector<S>& y) {
  const BasisTable& B = M.group().basis();
  const int base = B.layer_begin(abelian_layer(B.class_bound()));
  using T = ScalarTraits<S>;
  TensorSeries<S> g(M.shape());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == S(0)) continue;
    for (const auto& [w, a] : M.sparse_image(base + static_cast<int>(i)))
      g.coeffs()[w] = T::add(g.coeffs()[w], T::mul(S(a), y[i]));
  }
  return g;
}

template <class S>
Pivot<S> make_pivot(const MagnusBasis& M, TensorSeries<S> g, std::vector<S> coords, S lead, int node,
                    int layer) {
  Pivot<S> p{std::move(g), std::move(coords), lead, node, layer, {}};
  if (layer >= abelian_layer(M.group().class_bound())) p.lat = lattice_coords(M, p.elem);
  return p;
}

template <class S>
using Echelon = std::vector<std::optional<Pivot<S>>>;

// Reduces g against the echelon.  Returns -1 when g reaches the identity, or
// the basis position where reduction stops (no pivot, or lead does not divide);
// x then holds the layer coordinates of g in layer `layer`.
template <class S>
int reduce(const MagnusBasis& M, const Echelon<S>& E, TensorSeries<S>& g, std::vector<S>& x,
           int& layer, std::vector<CertificateTerm>& applied) {
  using T = ScalarTraits<S>;
  const BasisTable& B = M.group().basis();
  const int c = B.class_bound();
  const int d0 = abelian_layer(c), lbase = B.layer_begin(d0);
  for (;;) {
    const int d = g.valuation();
    if (d > c) return -1;
    if (d >= d0) {
      std::vector<S> y = lattice_coords(M, g);
      for (int i = B.layer_begin(d) - lbase; i < static_cast<int>(y.size()); ++i) {
        if (y[i] == S(0)) continue;
        const auto& p = E[lbase + i];
        if (!p || y[i] % p->lead != S(0)) {
          const int pos = lbase + i;
          layer = B.weight(pos);
          x.assign(y.begin() + (B.layer_begin(layer) - lbase), y.begin() + (B.layer_end(layer) - lbase));
          g = lattice_element(M, y);
          return pos;
        }
        const S q = y[i] / p->lead;
        for (std::size_t u = i; u < y.size(); ++u)
          if (p->lat[u] != S(0)) y[u] = T::add(y[u], T::mul(S(-q), p->lat[u]));
        applied.push_back({p->node, T::to_big(S(-q))});
      }
      g = TensorSeries<S>(M.shape());
      return -1;
    }
    x = M.layer_coords(g, d);
    const int base = B.layer_begin(d);
    for (int t = 0; t < static_cast<int>(x.size()); ++t) {
      if (x[t] == S(0)) continue;
      const auto& p = E[base + t];
      if (!p || x[t] % p->lead != S(0)) {
        layer = d;
        return base + t;
      }
      const S q = x[t] / p->lead;
      g = mul_pow(g, p->elem, T::to_big(S(-q)));
      for (std::size_t u = t; u < x.size(); ++u)
        if (p->coords[u] != S(0)) x[u] = T::add(x[u], T::mul(S(-q), p->coords[u]));
      applied.push_back({p->node, T::to_big(S(-q))});
    }
    if (!g.block(d).isZero()) throw std::logic_error("layer reduction left a remainder");
  }
}

template <class S>
S floor_quotient(const S& a, const S& b) {  // b > 0
  S q = a / b;
  if (a % b != S(0) && a < S(0)) q = q - S(1);
  return q;
}

// Brings the coordinates of a new pivot after its leading position into
// [0, lead) wherever a pivot exists, layer by layer.  Without this the
// non-leading coefficients grow geometrically through gcd replacements.
template <class S>
void tail_reduce(const MagnusBasis& M, const Echelon<S>& E, TensorSeries<S>& g, std::vector<S>& x,
                 int layer, int pos, std::vector<CertificateTerm>& applied) {
  using T = ScalarTraits<S>;
  const BasisTable& B = M.group().basis();
  const int c = B.class_bound();
  TensorSeries<S> rest = g;  // g with its already-reduced lower layers stripped
  auto reduce_layer = [&](std::vector<S>& y, int d, int from, bool own) {
    const int b = B.layer_begin(d);
    for (int t = from; t < static_cast<int>(y.size()); ++t) {
      const auto& p = E[b + t];
      if (!p || y[t] == S(0)) continue;
      const S q = floor_quotient(y[t], p->lead);
      if (q == S(0)) continue;
      const BigInt mq = T::to_big(S(-q));
      g = mul_pow(g, p->elem, mq);
      rest = mul_pow(rest, p->elem, mq);
      for (std::size_t u = t; u < y.size(); ++u)
        if (p->coords[u] != S(0)) y[u] = T::add(y[u], T::mul(S(-q), p->coords[u]));
      applied.push_back({p->node, mq});
    }
    if (own) x = y;
  };
  std::vector<S> y = x;
  reduce_layer(y, layer, pos - B.layer_begin(layer) + 1, true);
  for (int d = layer; d < c; ++d) {
    TensorSeries<S> lead(M.shape());
    for (int t = 0; t < static_cast<int>(y.size()); ++t)
      if (y[t] != S(0)) lead = mul(lead, pow(M.image<S>(B.layer_begin(d) + t), T::to_big(y[t])));
    rest = mul(inv(lead), rest);
    if (rest.valuation() > c) return;
    y = M.layer_coords(rest, d + 1);
    reduce_layer(y, d + 1, 0, false);
  }
}

}  // namespace

// ------------------------------------------------------------ Closure::Impl

struct Closure::Impl {
  FreeNilpotentPtr group;
  std::vector<Law> laws;
  ClosureOptions opt;
  ClosureStats stats;
  std::shared_ptr<MagnusBasis> magnus;
  std::vector<Node> nodes;
  std::variant<Echelon<std::int64_t>, Echelon<Int128>, Echelon<BigInt>> echelon;

  mutable std::mutex replay_mutex;
  mutable std::vector<std::optional<Syllables>> replay_memo;

  int add_node(Node n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }
  int product_node(std::vector<CertificateTerm> f) {
    Node n;
    n.kind = Node::Kind::Product;
    n.factors = std::move(f);
    return add_node(std::move(n));
  }

  template <class S>
  void build();
  template <class S>
  void kill_top_torsion(Echelon<S>& E, int p);
  template <class S>
  CheckResult check_in(const Echelon<S>& E, const NormalWord& w) const;

  Syllables replay_node(int id) const;
  std::vector<std::string> hypotheses_of(const std::vector<CertificateTerm>& cert) const;
};

template <class S>
void Closure::Impl::build() {
  using T = ScalarTraits<S>;
  const MagnusBasis& M = *magnus;
  const FreeNilpotentGroup& F = *group;
  const BasisTable& B = F.basis();
  const int c = B.class_bound();
  const int k = F.generator_count();
  const int depth = opt.depth > 0 ? opt.depth : c;
  nodes.clear();
  stats = ClosureStats{};
  stats.scalar = std::is_same_v<S, BigInt> ? "bigint" : std::is_same_v<S, Int128> ? "int128" : "int64";
  Echelon<S> E(B.size());
  std::unordered_map<int, TensorSeries<S>> values;  // pivot node -> element
  struct Task {
    int a, b, gen;
  };
  std::deque<Task> tasks;
  std::deque<std::pair<TensorSeries<S>, int>> pending;
  MagnusOps<S> ops{M.shape()};

  auto enqueue_tasks = [&](int node, int layer) {
    if (layer >= c) return;  // central: every commutator is trivial
    for (int g = 0; g < k; ++g) tasks.push_back({node, -1, g});
    for (const auto& p : E)
      if (p && p->node != node && p->layer + layer <= c) tasks.push_back({node, p->node, -1});
  };

  auto sift_store = [&](TensorSeries<S> g, int node) {
    ++stats.sifts;
    std::vector<CertificateTerm> applied;
    std::vector<S> x;
    for (;;) {
      int layer = 0;
      const int pos = reduce(M, E, g, x, layer, applied);
      if (pos < 0) return;
      const int t = pos - B.layer_begin(layer);
      int cur = node;
      if (!applied.empty()) {
        std::vector<CertificateTerm> f{{node, BigInt(1)}};
        f.insert(f.end(), applied.begin(), applied.end());
        cur = product_node(std::move(f));
        applied.clear();
      }
      auto& slot = E[pos];
      if (!slot) {
        if (x[t] < S(0)) {
          g = inv(g);
          for (auto& v : x) v = S(-v);
          cur = product_node({{cur, BigInt(-1)}});
        }
        {
          std::vector<CertificateTerm> tail;
          tail_reduce(M, E, g, x, layer, pos, tail);
          if (!tail.empty()) {
            std::vector<CertificateTerm> f{{cur, BigInt(1)}};
            f.insert(f.end(), tail.begin(), tail.end());
            cur = product_node(std::move(f));
          }
        }
        Pivot<S> p = make_pivot(M, g, x, x[t], cur, layer);
        values.emplace(cur, g);
        slot = std::move(p);
        ++stats.pivots_stored;
        enqueue_tasks(cur, layer);
        return;
      }
      // Lead does not divide: replace the pivot by a gcd combination.
      auto [gd, s, u] = ext_gcd(T::to_big(x[t]), T::to_big(slot->lead));
      TensorSeries<S> h = mul(pow(g, s), pow(slot->elem, u));
      std::vector<S> hc(x.size());
      const S ss = T::from_big(s), uu = T::from_big(u);
      for (std::size_t v = 0; v < x.size(); ++v)
        hc[v] = T::add(T::mul(ss, x[v]), T::mul(uu, slot->coords[v]));
      int hn = product_node({{cur, s}, {slot->node, u}});
      {
        std::vector<CertificateTerm> tail;
        tail_reduce(M, E, h, hc, layer, pos, tail);
        if (!tail.empty()) {
          std::vector<CertificateTerm> f{{hn, BigInt(1)}};
          f.insert(f.end(), tail.begin(), tail.end());
          hn = product_node(std::move(f));
        }
      }
      Pivot<S> old = std::move(*slot);
      slot = make_pivot(M, h, hc, T::from_big(gd), hn, layer);
      values.emplace(hn, h);
      ++stats.pivots_stored;
      enqueue_tasks(hn, layer);
      const BigInt old_q = -(T::to_big(old.lead) / gd);
      pending.emplace_back(mul_pow(old.elem, h, old_q), product_node({{old.node, BigInt(1)}, {hn, old_q}}));
      const BigInt q = -(T::to_big(x[t]) / gd);
      g = mul_pow(g, h, q);
      node = product_node({{cur, BigInt(1)}, {hn, q}});
    }
  };

  auto exhausted = [&]() {
    if (opt.budget > 0 && stats.sifts >= opt.budget) {
      stats.budget_exhausted = true;
      return true;
    }
    return false;
  };

  auto drain = [&]() {
    while (!pending.empty() || !tasks.empty()) {
      if (exhausted()) return;
      if (!pending.empty()) {
        auto [g, n] = std::move(pending.front());
        pending.pop_front();
        sift_store(std::move(g), n);
        continue;
      }
      Task tk = tasks.front();
      tasks.pop_front();
      Node n;
      n.a = tk.a;
      TensorSeries<S> g;
      if (tk.gen >= 0) {
        n.kind = Node::Kind::CommGen;
        n.gen = tk.gen;
        g = comm(values.at(tk.a), M.image<S>(tk.gen));
      } else {
        n.kind = Node::Kind::Comm;
        n.b = tk.b;
        g = comm(values.at(tk.a), values.at(tk.b));
      }
      if (g.is_one()) continue;
      sift_store(std::move(g), add_node(std::move(n)));
    }
  };

  for (int r = 0; r < static_cast<int>(opt.relations.size()); ++r) {
    if (opt.relations[r].value.context() != group.get())
      throw std::invalid_argument("adjoined relation from another context");
    Node n;
    n.kind = Node::Kind::Relation;
    n.relation = r;
    sift_store(M.from_word<S>(opt.relations[r].value), add_node(std::move(n)));
    drain();
  }
  for (int l = 0; l < static_cast<int>(laws.size()) && !stats.budget_exhausted; ++l) {
    const Law& law = laws[l];
    std::vector<std::vector<Syllables>> tuples;
    if (opt.strategy == InstanceStrategy::Explicit) {
      for (const auto& t : opt.tuples)
        if (static_cast<int>(t.size()) == law.arity) tuples.push_back(t);
    } else {
      tuples = instance_tuples(F, law.arity, depth, opt.strategy, opt.samples, opt.seed);
    }
    for (auto& tuple : tuples) {
      if (exhausted()) break;
      std::vector<TensorSeries<S>> vals;
      vals.reserve(tuple.size());
      for (const auto& p : tuple) vals.push_back(M.from_word<S>(NormalWord(group.get(), p)));
      TensorSeries<S> g = evaluate(law.expression, vals, ops);
      ++stats.instances;
      if (g.is_one()) continue;
      Node n;
      n.kind = Node::Kind::Instance;
      n.law = l;
      n.point = std::move(tuple);
      sift_store(std::move(g), add_node(std::move(n)));
      drain();
    }
  }
  if (opt.kill_torsion_prime) kill_top_torsion<S>(E, *opt.kill_torsion_prime);
  stats.pivots = 0;
  for (const auto& p : E) stats.pivots += p.has_value();
  echelon = std::move(E);
}

// The top layer gamma_c is central: if r in gamma_c has r^{p^m} in N, then in
// a group without p-torsion r itself is trivial.  Saturate N cap gamma_c with
// respect to p and record each new generator as a root certificate.
template <class S>
void Closure::Impl::kill_top_torsion(Echelon<S>& E, int p) {
  using T = ScalarTraits<S>;
  const BasisTable& B = group->basis();
  const int c = B.class_bound();
  const int base = B.layer_begin(c), n = B.layer_size(c);
  if (n == 0) return;
  // Columns of `lat` span L = N cap gamma_c in layer coordinates.  With
  // U lat V = D we get L = U^{-1} D Z^r; saturating replaces each d_i by its
  // p'-part, adding the generators U^{-1} e_i d_i'.
  std::vector<int> rows_pos;
  for (int t = 0; t < n; ++t)
    if (E[base + t]) rows_pos.push_back(base + t);
  if (rows_pos.empty()) return;
  BigMatrix lat(n, static_cast<Eigen::Index>(rows_pos.size()));
  for (std::size_t j = 0; j < rows_pos.size(); ++j)
    for (int u = 0; u < n; ++u) lat(u, j) = T::to_big(E[rows_pos[j]]->coords[u]);
  const SmithResult snf = smith_normal_form(lat, true);
  std::vector<std::pair<Syllables, BigInt>> roots;  // (r, p^m) with r^{p^m} in N
  for (std::size_t i = 0; i < snf.diagonal.size(); ++i) {
    BigInt d = snf.diagonal[i];
    if (d == 0) continue;
    BigInt pm = 1;
    while (d % p == 0) {
      d /= p;
      pm *= p;
    }
    if (pm == 1) continue;
    Syllables rs;
    for (int u = 0; u < n; ++u)
      if (snf.U_inverse(u, i) != 0) rs.emplace_back(base + u, snf.U_inverse(u, i) * d);
    roots.emplace_back(std::move(rs), pm);
  }
  std::vector<CertificateTerm> applied;
  std::vector<S> x;
  int layer = 0;
  for (auto& [rs, pm] : roots) {
    NormalWord r(group.get(), rs);
    TensorSeries<S> g = magnus->from_word<S>(power(r, pm));
    applied.clear();
    if (reduce(*magnus, E, g, x, layer, applied) >= 0)
      throw std::logic_error("torsion root power is not in the closure");
    // r^{pm} * prod(applied) = 1
    std::vector<CertificateTerm> f;
    for (auto it = applied.rbegin(); it != applied.rend(); ++it) f.push_back({it->node, -it->exponent});
    Node rn;
    rn.kind = Node::Kind::Root;
    rn.a = product_node(std::move(f));
    rn.root_exponent = pm;
    rn.root_value = rs;
    const int id = add_node(std::move(rn));
    // The top layer is central and abelian: insertion is plain lattice work.
    std::vector<std::pair<TensorSeries<S>, int>> work{{magnus->from_word<S>(r), id}};
    while (!work.empty()) {
      auto [h, node] = std::move(work.back());
      work.pop_back();
      applied.clear();
      const int pos = reduce(*magnus, E, h, x, layer, applied);
      if (pos < 0) continue;
      int cur = node;
      if (!applied.empty()) {
        std::vector<CertificateTerm> f2{{node, BigInt(1)}};
        f2.insert(f2.end(), applied.begin(), applied.end());
        cur = product_node(std::move(f2));
      }
      const int t = pos - base;
      auto& slot = E[pos];
      if (!slot) {
        if (x[t] < S(0)) {
          h = inv(h);
          for (auto& y : x) y = S(-y);
          cur = product_node({{cur, BigInt(-1)}});
        }
        slot = make_pivot(*magnus, h, x, x[t], cur, c);
        continue;
      }
      auto [gd, s, u] = ext_gcd(T::to_big(x[t]), T::to_big(slot->lead));
      TensorSeries<S> hh = mul(pow(h, s), pow(slot->elem, u));
      std::vector<S> hc(x.size());
      for (std::size_t y = 0; y < x.size(); ++y)
        hc[y] = T::add(T::mul(T::from_big(s), x[y]), T::mul(T::from_big(u), slot->coords[y]));
      const int hn = product_node({{cur, s}, {slot->node, u}});
      Pivot<S> old = std::move(*slot);
      slot = make_pivot(*magnus, hh, hc, T::from_big(gd), hn, c);
      const BigInt oq = -(T::to_big(old.lead) / gd);
      work.emplace_back(mul_pow(old.elem, hh, oq), product_node({{old.node, BigInt(1)}, {hn, oq}}));
      const BigInt rq = -(T::to_big(x[t]) / gd);
      work.emplace_back(mul_pow(h, hh, rq), product_node({{cur, BigInt(1)}, {hn, rq}}));
    }
  }
}

template <class S>
CheckResult Closure::Impl::check_in(const Echelon<S>& E, const NormalWord& w) const {
  CheckResult r;
  r.target = w;
  TensorSeries<S> g = magnus->from_word<S>(w);
  std::vector<CertificateTerm> applied;
  std::vector<S> x;
  int layer = 0;
  const int pos = reduce(*magnus, E, g, x, layer, applied);
  if (pos >= 0) {
    r.member = false;
    r.residual = magnus->to_word(g);
    return r;
  }
  r.member = true;
  r.residual = group->identity();
  // w * prod(applied) = 1  =>  w = prod over reversed applied of node^{-e}
  for (auto it = applied.rbegin(); it != applied.rend(); ++it)
    r.certificate.push_back({it->node, -it->exponent});
  return r;
}

Syllables Closure::Impl::replay_node(int id) const {
  if (replay_memo[id]) return *replay_memo[id];
  const FreeNilpotentGroup& F = *group;
  const Node& n = nodes[id];
  Syllables v;
  switch (n.kind) {
    case Node::Kind::Instance: {
      std::vector<NormalWord> vals;
      for (const auto& p : n.point) vals.emplace_back(group.get(), p);
      v = evaluate_word(laws[n.law].expression, vals).syllables();
      break;
    }
    case Node::Kind::Relation:
      v = opt.relations[n.relation].value.syllables();
      break;
    case Node::Kind::CommGen:
      v = F.comm(replay_node(n.a), {{n.gen, BigInt(1)}});
      break;
    case Node::Kind::Comm:
      v = F.comm(replay_node(n.a), replay_node(n.b));
      break;
    case Node::Kind::Product:
      for (const auto& f : n.factors) v = F.mul(v, F.pow(replay_node(f.node), f.exponent));
      break;
    case Node::Kind::Root: {
      Syllables base = replay_node(n.a);
      if (F.pow(n.root_value, n.root_exponent) != base)
        throw std::runtime_error("root certificate does not replay");
      v = n.root_value;
      break;
    }
  }
  replay_memo[id] = v;
  return v;
}

std::vector<std::string> Closure::Impl::hypotheses_of(const std::vector<CertificateTerm>& cert) const {
  std::set<std::string> tags;
  std::vector<char> seen(nodes.size(), 0);
  std::vector<int> stack;
  for (const auto& t : cert) stack.push_back(t.node);
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (id < 0 || seen[id]) continue;
    seen[id] = 1;
    const Node& n = nodes[id];
    if (n.kind == Node::Kind::Root)
      tags.insert("no elements of order " + std::to_string(*opt.kill_torsion_prime));
    if (n.kind == Node::Kind::Relation && opt.relations[n.relation].assumed)
      tags.insert("assumed: " + opt.relations[n.relation].name);
    stack.push_back(n.a);
    stack.push_back(n.b);
    for (const auto& f : n.factors) stack.push_back(f.node);
  }
  return {tags.begin(), tags.end()};
}

// ----------------------------------------------------------------- Closure

Closure::Closure(FreeNilpotentPtr group, std::vector<Law> laws, ClosureOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->group = std::move(group);
  impl_->laws = std::move(laws);
  impl_->opt = std::move(options);
  impl_->magnus = std::make_shared<MagnusBasis>(impl_->group);
  for (const auto& l : impl_->laws)
    if (l.arity < 1) throw std::invalid_argument("law '" + l.name + "' has no variables");
  const auto t0 = std::chrono::steady_clock::now();
  try {
    impl_->build<std::int64_t>();
  } catch (const ScalarOverflow&) {
    try {
      impl_->build<Int128>();
    } catch (const ScalarOverflow&) {
      impl_->build<BigInt>();
    }
  }
  impl_->stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Closure::~Closure() = default;
Closure::Closure(Closure&&) noexcept = default;
Closure& Closure::operator=(Closure&&) noexcept = default;

const FreeNilpotentGroup& Closure::group() const { return *impl_->group; }
const std::vector<Law>& Closure::laws() const { return impl_->laws; }
const ClosureOptions& Closure::options() const { return impl_->opt; }
const ClosureStats& Closure::stats() const { return impl_->stats; }

std::optional<BigInt> Closure::quotient_order() const {
  return std::visit(
      [](const auto& E) -> std::optional<BigInt> {
        BigInt order = 1;
        for (const auto& p : E) {
          if (!p) return std::nullopt;
          order *= ScalarTraits<std::decay_t<decltype(p->lead)>>::to_big(p->lead);
        }
        return order;
      },
      impl_->echelon);
}

int Closure::free_rank() const {
  return std::visit(
      [](const auto& E) {
        int r = 0;
        for (const auto& p : E) r += !p;
        return r;
      },
      impl_->echelon);
}

BigInt Closure::pivot_lead(int i) const {
  return std::visit(
      [i](const auto& E) -> BigInt {
        if (i < 0 || i >= static_cast<int>(E.size()) || !E[i]) return 0;
        return ScalarTraits<std::decay_t<decltype(E[i]->lead)>>::to_big(E[i]->lead);
      },
      impl_->echelon);
}

CheckResult Closure::check(const NormalWord& w) const {
  if (w.context() != impl_->group.get())
    throw std::invalid_argument("check: word from another context");
  return std::visit(
      [&](const auto& E) -> CheckResult {
        using P = typename std::decay_t<decltype(E)>::value_type::value_type;
        using S = std::decay_t<decltype(std::declval<P>().lead)>;
        if constexpr (std::is_same_v<S, BigInt>) {
          return impl_->check_in(E, w);
        } else {
          try {
            return impl_->check_in(E, w);
          } catch (const ScalarOverflow&) {
            Echelon<BigInt> big(E.size());
            for (std::size_t i = 0; i < E.size(); ++i) {
              if (!E[i]) continue;
              const auto& p = *E[i];
              std::vector<BigInt> co;
              for (const auto& v : p.coords) co.push_back(ScalarTraits<S>::to_big(v));
              std::vector<BigInt> lat;
              for (const auto& v : p.lat) lat.push_back(ScalarTraits<S>::to_big(v));
              big[i] = Pivot<BigInt>{p.elem.template cast<BigInt>(impl_->magnus->shape()), co,
                                     ScalarTraits<S>::to_big(p.lead), p.node, p.layer, lat};
            }
            return impl_->check_in(big, w);
          }
        }
      },
      impl_->echelon);
}

bool Closure::replay(const CheckResult& r) const {
  if (!r.member) return false;
  std::lock_guard<std::mutex> lock(impl_->replay_mutex);
  impl_->replay_memo.resize(impl_->nodes.size());
  const FreeNilpotentGroup& F = *impl_->group;
  try {
    Syllables v;
    for (const auto& t : r.certificate) v = F.mul(v, F.pow(impl_->replay_node(t.node), t.exponent));
    return v == r.target.syllables();
  } catch (const std::runtime_error&) {
    return false;
  }
}

int Closure::certificate_nodes() const { return static_cast<int>(impl_->nodes.size()); }

std::vector<std::string> Closure::hypotheses(const CheckResult& r) const {
  return impl_->hypotheses_of(r.certificate);
}

Closure law_closure(FreeNilpotentPtr group, std::vector<Law> laws, ClosureOptions options) {
  return Closure(std::move(group), std::move(laws), std::move(options));
}

}  // namespace bogo
