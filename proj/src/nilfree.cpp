#include "bogo/nilfree.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bogo {

// ---------------------------------------------------------------- NormalWord

BigInt NormalWord::exponent(int i) const {
  auto it = std::lower_bound(syl_.begin(), syl_.end(), i,
                             [](const Syllable& s, int v) { return s.first < v; });
  if (it != syl_.end() && it->first == i) return it->second;
  return 0;
}

std::vector<BigInt> NormalWord::exponents() const {
  std::vector<BigInt> e(ctx_ ? ctx_->basis().size() : 0);
  for (const auto& [i, x] : syl_) e[i] = x;
  return e;
}

int NormalWord::depth() const {
  if (syl_.empty()) return ctx_ ? ctx_->class_bound() + 1 : 1;
  return ctx_->basis().weight(syl_.front().first);
}

std::string NormalWord::str() const {
  if (syl_.empty()) return "1";
  std::string s;
  for (const auto& [i, e] : syl_) {
    if (!s.empty()) s += ' ';
    s += ctx_->basis().render(i);
    if (e != 1) s += "^" + e.str();
  }
  return s;
}

// ------------------------------------------------------- FreeNilpotentGroup

FreeNilpotentGroup::FreeNilpotentGroup(int k, int c, FreeNilpotentOptions opt)
    : basis_(generate_basis(k, c)) {
  build(opt);
}

std::shared_ptr<const FreeNilpotentGroup> FreeNilpotentGroup::create(int k, int c,
                                                                     FreeNilpotentOptions opt) {
  return std::shared_ptr<const FreeNilpotentGroup>(new FreeNilpotentGroup(k, c, std::move(opt)));
}

NormalWord FreeNilpotentGroup::generator(int g) const {
  if (g < 0 || g >= generator_count()) throw std::out_of_range("generator index");
  return NormalWord(this, {{g, BigInt(1)}});
}

NormalWord FreeNilpotentGroup::basic(int i, BigInt e) const {
  if (i < 0 || i >= basis_.size()) throw std::out_of_range("basis index");
  if (e == 0) return identity();
  return NormalWord(this, {{i, std::move(e)}});
}

NormalWord FreeNilpotentGroup::from_exponents(const std::vector<BigInt>& e) const {
  Syllables s;
  for (int i = 0; i < static_cast<int>(e.size()) && i < basis_.size(); ++i)
    if (e[i] != 0) s.emplace_back(i, e[i]);
  return NormalWord(this, std::move(s));
}

NormalWord FreeNilpotentGroup::word(const Syllables& s) const {
  Syllables r;
  for (const auto& [i, e] : s) mul_basic(r, i, e);
  return NormalWord(this, std::move(r));
}

NormalWord FreeNilpotentGroup::structure_constant(int j, int i) const {
  if (j <= i) throw std::invalid_argument("structure_constant needs j > i");
  int s = slot(j, i);
  if (s < 0) return identity();
  return NormalWord(this, constants_[s]);
}

void FreeNilpotentGroup::mul_basic(Syllables& r, int i, const BigInt& s) const {
  if (s == 0) return;
  auto p = std::lower_bound(r.begin(), r.end(), i,
                            [](const Syllable& x, int v) { return x.first < v; });
  const std::size_t pi = static_cast<std::size_t>(p - r.begin());
  if (p == r.end()) {
    r.emplace_back(i, s);
    return;
  }
  BigInt ei = 0;
  std::size_t q = pi;
  if (p->first == i) {
    ei = p->second;
    q = pi + 1;
  }
  const int wi = basis_.weight(i);
  const bool commutes = q == r.size() || basis_.weight(r[q].first) + wi > basis_.class_bound();
  if (commutes) {
    BigInt ne = ei + s;
    if (q == pi + 1) {
      if (ne == 0)
        r.erase(r.begin() + pi);
      else
        r[pi].second = std::move(ne);
    } else {
      r.insert(r.begin() + pi, Syllable(i, std::move(ne)));
    }
    return;
  }
  Syllables t;
  for (std::size_t x = q; x < r.size(); ++x) {
    Syllables f = conj_power(r[x].first, r[x].second, i, s);
    if (t.empty() || (!f.empty() && t.back().first < f.front().first)) {
      t.insert(t.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
    } else {
      for (const auto& [l, e] : f) mul_basic(t, l, e);
    }
  }
  r.resize(pi);
  BigInt ne = ei + s;
  if (ne != 0) r.emplace_back(i, std::move(ne));
  r.insert(r.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
}

Syllables FreeNilpotentGroup::mul(const Syllables& u, const Syllables& v) const {
  if (u.empty()) return v;
  if (v.empty()) return u;
  Syllables r = u;
  if (r.back().first < v.front().first) {
    r.insert(r.end(), v.begin(), v.end());
    return r;
  }
  for (const auto& [i, e] : v) mul_basic(r, i, e);
  return r;
}

Syllables FreeNilpotentGroup::inv(const Syllables& u) const {
  Syllables r;
  for (auto it = u.rbegin(); it != u.rend(); ++it) mul_basic(r, it->first, -it->second);
  return r;
}

Syllables FreeNilpotentGroup::pow(const Syllables& u, const BigInt& n) const {
  if (n == 0 || u.empty()) return {};
  if (n < 0) return pow(inv(u), -n);
  if (u.size() == 1) return {{u[0].first, u[0].second * n}};
  Syllables result, base = u;
  BigInt m = n;
  for (;;) {
    if (m & 1) result = mul(result, base);
    m >>= 1;
    if (m == 0) break;
    base = mul(base, base);
  }
  return result;
}

Syllables FreeNilpotentGroup::comm(const Syllables& u, const Syllables& v) const {
  if (u.empty() || v.empty()) return {};
  return mul(inv(mul(v, u)), mul(u, v));
}

Syllables FreeNilpotentGroup::conj_power(int j, const BigInt& e, int i, const BigInt& s) const {
  if (e == 0) return {};
  const int sl = slot(j, i);
  if (s == 0 || sl < 0) return {{j, e}};
  const ConjTable& t = tables_[sl];
  std::vector<BigInt> ce(t.max_a + 1), cs(t.max_b + 1);
  ce[0] = 1;
  for (int a = 1; a <= t.max_a; ++a) ce[a] = ce[a - 1] * (e - (a - 1)) / a;
  cs[0] = 1;
  for (int b = 1; b <= t.max_b; ++b) cs[b] = cs[b - 1] * (s - (b - 1)) / b;
  Syllables out;
  out.reserve(t.coords.size() + 1);
  out.emplace_back(j, e);
  for (const Poly& p : t.coords) {
    BigInt v = 0;
    for (const auto& [a, b, coef] : p.terms) {
      if (ce[a] == 0 || cs[b] == 0) continue;
      v += coef * ce[a] * cs[b];
    }
    if (v != 0) out.emplace_back(p.r, std::move(v));
  }
  return out;
}

Syllables FreeNilpotentGroup::conj_once(const Syllables& u, int i) const {
  // u^{c_i} = prod_l (c_l [c_l, c_i])^{y_l}
  Syllables r;
  for (const auto& [l, y] : u) {
    const int sl = slot(l, i);
    Syllables f;
    if (sl < 0) {
      f = {{l, y}};
    } else {
      Syllables base{{l, BigInt(1)}};
      base.insert(base.end(), constants_[sl].begin(), constants_[sl].end());
      f = pow(base, y);
    }
    r = mul(r, f);
  }
  return r;
}

void FreeNilpotentGroup::build(const FreeNilpotentOptions& opt) {
  const int n = basis_.size();
  const int c = basis_.class_bound();
  slot_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = n - 1; i >= 0; --i) {
    const int wi = basis_.weight(i);
    std::vector<int> js;
    for (int j = i + 1; j < n && basis_.weight(j) + wi <= c; ++j) {
      slot_[static_cast<std::size_t>(j) * n + i] = static_cast<int>(tables_.size());
      tables_.emplace_back();
      constants_.emplace_back();
      js.push_back(j);
    }
    // Structure constants [c_j, c_i], increasing j so that the constants of
    // the halves of c_j are already known.
    for (int j : js) {
      Syllables k;
      if (auto p = basis_.pair_index(j, i)) {
        k = {{*p, BigInt(1)}};
      } else {
        // c_j = [u1,u2] with u2 > c_i:  c_j^{c_i} = [u1^{c_i}, u2^{c_i}].
        const int u1 = basis_[j].left, u2 = basis_[j].right;
        auto conj_gen = [&](int u) {
          Syllables x{{u, BigInt(1)}};
          int sl = slot(u, i);
          if (sl >= 0) x.insert(x.end(), constants_[sl].begin(), constants_[sl].end());
          return x;
        };
        Syllables cj = comm(conj_gen(u1), conj_gen(u2));
        k = mul(Syllables{{j, BigInt(-1)}}, cj);
      }
      if (opt.perturb && opt.perturb->first == j && opt.perturb->second == i) {
        const int w = basis_.weight(j) + wi;
        k = mul(k, Syllables{{basis_.layer_begin(w), BigInt(1)}});
      }
      constants_[slot(j, i)] = std::move(k);
    }
    // Conjugation polynomials, interpolated on the weighted simplex
    // a*wt(j) + b*wt(i) <= c from exact values.
    for (int j : js) {
      const int wj = basis_.weight(j);
      const int max_a = c / wj;
      const int max_b = (c - wj) / wi;
      std::vector<std::vector<Syllables>> val(max_b + 1, std::vector<Syllables>(max_a + 1));
      for (int a = 1; a <= max_a; ++a) val[0][a] = {{j, BigInt(a)}};
      for (int b = 1; b <= max_b; ++b)
        for (int a = 1; a * wj + b * wi <= c; ++a) {
          val[b][a] = conj_once(val[b - 1][a], i);
          ++stats_.interpolation_points;
        }
      std::map<int, std::map<std::pair<int, int>, BigInt>> grid;  // r -> (a,b) -> value
      for (int b = 0; b <= max_b; ++b)
        for (int a = 1; a * wj + b * wi <= c; ++a)
          for (const auto& [r, e] : val[b][a])
            if (r != j) grid[r][{a, b}] = e;
      ConjTable t;
      t.max_a = max_a;
      t.max_b = max_b;
      for (auto& [r, pts] : grid) {
        auto at = [&](int a, int b) {
          auto it = pts.find({a, b});
          return it == pts.end() ? BigInt(0) : it->second;
        };
        std::map<std::pair<int, int>, BigInt> d1;
        for (int b = 0; b <= max_b; ++b)
          for (int a = 0; a * wj + b * wi <= c; ++a) {
            BigInt acc = 0;
            for (int x = 0; x <= a; ++x) {
              BigInt term = binomial(a, x) * at(x, b);
              if ((a - x) & 1) acc -= term; else acc += term;
            }
            d1[{a, b}] = acc;
          }
        Poly p;
        p.r = r;
        for (int b = 0; b <= max_b; ++b)
          for (int a = 0; a * wj + b * wi <= c; ++a) {
            BigInt acc = 0;
            for (int y = 0; y <= b; ++y) {
              BigInt term = binomial(b, y) * d1[{a, y}];
              if ((b - y) & 1) acc -= term; else acc += term;
            }
            if (acc != 0) p.terms.emplace_back(a, b, acc);
          }
        if (!p.terms.empty()) t.coords.push_back(std::move(p));
      }
      tables_[slot(j, i)] = std::move(t);
      ++stats_.tables;
    }
  }
}

// -------------------------------------------------------------- element API

namespace {
const FreeNilpotentGroup* same_context(const NormalWord& u, const NormalWord& v) {
  if (u.context() == nullptr || u.context() != v.context())
    throw std::invalid_argument("normal words belong to different contexts");
  return u.context();
}
const FreeNilpotentGroup* context_of(const NormalWord& u) {
  if (!u.context()) throw std::invalid_argument("normal word without context");
  return u.context();
}
}  // namespace

NormalWord multiply(const NormalWord& u, const NormalWord& v) {
  auto g = same_context(u, v);
  return NormalWord(g, g->mul(u.syllables(), v.syllables()));
}

NormalWord invert(const NormalWord& u) {
  auto g = context_of(u);
  return NormalWord(g, g->inv(u.syllables()));
}

NormalWord power(const NormalWord& u, const BigInt& n) {
  auto g = context_of(u);
  return NormalWord(g, g->pow(u.syllables(), n));
}

NormalWord commutator(const NormalWord& u, const NormalWord& v) {
  auto g = same_context(u, v);
  return NormalWord(g, g->comm(u.syllables(), v.syllables()));
}

NormalWord evaluate_word(const Expr& e, const std::vector<NormalWord>& assignment) {
  const int a = arity(e);
  if (a > static_cast<int>(assignment.size()))
    throw std::invalid_argument("evaluate_word: expression has arity " + std::to_string(a) +
                                " but " + std::to_string(assignment.size()) + " values given");
  if (assignment.empty()) {
    if (a == 0) return NormalWord();
    throw std::invalid_argument("evaluate_word: empty assignment");
  }
  for (const auto& w : assignment) same_context(w, assignment.front());
  return evaluate(e, assignment, NormalWordOps{assignment.front().context()});
}

// ------------------------------------------------------ rewriting collectors

namespace {

void append_letters(Letters& out, const Syllables& s) {
  for (const auto& [i, e] : s) {
    const int sign = e > 0 ? 1 : -1;
    BigInt m = e > 0 ? e : BigInt(-e);
    for (BigInt t = 0; t < m; ++t) out.emplace_back(i, sign);
  }
}

}  // namespace

NormalWord collect_letters(const FreeNilpotentGroup& g, Letters w, CollectionStrategy strategy,
                           long long step_budget) {
  const auto& basis = g.basis();
  auto needs_work = [&](std::size_t p) {
    return w[p].first > w[p + 1].first ||
           (w[p].first == w[p + 1].first && w[p].second != w[p + 1].second);
  };
  for (long long step = 0;; ++step) {
    if (step > step_budget) throw std::runtime_error("collect_letters: step budget exhausted");
    std::size_t pick = w.size();
    if (strategy == CollectionStrategy::LeftmostUncollected) {
      for (std::size_t p = 0; p + 1 < w.size(); ++p)
        if (needs_work(p)) {
          pick = p;
          break;
        }
    } else {
      int best = -1;
      for (std::size_t p = 0; p + 1 < w.size(); ++p) {
        if (!needs_work(p)) continue;
        int depth = basis.weight(w[p].first) + basis.weight(w[p + 1].first);
        if (depth >= best) {
          best = depth;
          pick = p;
        }
      }
    }
    if (pick == w.size()) break;
    auto [j, eps] = w[pick];
    auto [i, del] = w[pick + 1];
    Letters repl;
    if (j != i) {
      repl.emplace_back(i, del);
      append_letters(repl, g.conj_power(j, BigInt(eps), i, BigInt(del)));
    }
    w.erase(w.begin() + pick, w.begin() + pick + 2);
    w.insert(w.begin() + pick, repl.begin(), repl.end());
  }
  Syllables s;
  for (const auto& [i, e] : w) {
    if (!s.empty() && s.back().first == i)
      s.back().second += e;
    else
      s.emplace_back(i, BigInt(e));
  }
  return NormalWord(&g, std::move(s));
}

}  // namespace bogo
