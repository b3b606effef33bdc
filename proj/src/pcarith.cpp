#include "bogo/pcarith.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace bogo {

namespace {

std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

PcString inverse_string(const PcString& w) {
  PcString out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

bool is_prime_power(std::int64_t q) {
  if (q < 2) return false;
  std::int64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) return true;  // q itself is prime
  while (q % p == 0) q /= p;
  return q == 1;
}

}  // namespace

// ---------------------------------------------------------------------------
// PcWord

bool PcWord::is_identity() const {
  return std::all_of(exps.begin(), exps.end(), [](std::int64_t e) { return e == 0; });
}

int PcWord::depth() const {
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0) return static_cast<int>(i);
  return static_cast<int>(exps.size());
}

PcString PcWord::syllables() const {
  PcString s;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0) s.push_back({static_cast<int>(i), exps[i]});
  return s;
}

// ---------------------------------------------------------------------------
// Collector tables

// Normal forms of the relations, computed from the last generator upwards so
// that collecting a relation only touches tables that are already filled.
struct PcPresentation::Tables {
  int n = 0;
  std::vector<std::int64_t> orders;
  std::vector<PcString> pow, pow_inv;
  std::vector<std::vector<PcString>> conj, conj_inv;  // [j][i]
  std::vector<std::vector<char>> commutes;            // g_j^{g_i} == g_j
};

namespace {

struct Collector {
  const std::vector<std::int64_t>& orders;
  const std::vector<PcString>& pow;
  const std::vector<PcString>& pow_inv;
  const std::vector<std::vector<PcString>>& conj;
  const std::vector<std::vector<PcString>>& conj_inv;
  const std::vector<std::vector<char>>& commutes;
  std::int64_t budget;

  static void push_power(std::vector<PcSyllable>& stack, const PcString& w, std::int64_t m) {
    // pushes w^m (m > 0) so that it is processed left to right
    if (w.empty() || m <= 0) return;
    if (w.size() == 1) {
      stack.push_back({w[0].gen, w[0].exp * m});
      return;
    }
    for (std::int64_t r = 0; r < m; ++r)
      for (auto it = w.rbegin(); it != w.rend(); ++it) stack.push_back(*it);
  }

  void run(std::vector<std::int64_t>& e, std::vector<PcSyllable>& stack) const {
    const int n = static_cast<int>(e.size());
    std::int64_t steps = 0;
    while (!stack.empty()) {
      auto [k, a] = stack.back();
      stack.pop_back();
      if (a == 0) continue;
      if (++steps > budget)
        throw CollectionBudgetExceeded("collection exceeded the step budget of " +
                                       std::to_string(budget));
      const std::int64_t o = orders[k];
      if (o > 0) {
        const std::int64_t q = floor_div64(a, o);
        a -= q * o;
        // g_k^a = g_k^r (g_k^o)^q: the power part is processed afterwards
        if (q > 0) push_power(stack, pow[k], q);
        if (q < 0) push_power(stack, pow_inv[k], -q);
        if (a == 0) continue;
      }
      bool central = true;
      for (int j = k + 1; j < n && central; ++j)
        if (e[j] != 0 && !commutes[j][k]) central = false;
      if (central) {
        e[k] += a;
        if (o > 0 && e[k] >= o) {
          // g_k^o sits before the suffix: re-queue the suffix behind it
          e[k] -= o;
          for (int j = n - 1; j > k; --j)
            if (e[j] != 0) {
              stack.push_back({j, e[j]});
              e[j] = 0;
            }
          push_power(stack, pow[k], 1);
        }
        continue;
      }
      const std::int64_t step = a > 0 ? 1 : -1;
      if (a != step) stack.push_back({k, a - step});
      const auto& table = step > 0 ? conj : conj_inv;
      // suffix s moves past g_k^step as s^{g_k^step}
      std::vector<PcSyllable> moved;
      for (int j = n - 1; j > k; --j) {
        if (e[j] == 0) continue;
        const PcString& w = table[j][k];
        if (e[j] > 0)
          push_power(moved, w, e[j]);
        else
          push_power(moved, inverse_string(w), -e[j]);
        e[j] = 0;
      }
      stack.insert(stack.end(), moved.begin(), moved.end());
      e[k] += step;
      if (o > 0 && e[k] == o) {
        e[k] = 0;
        push_power(stack, pow[k], 1);
      }
    }
  }
};

}  // namespace

PcPresentation::PcPresentation(std::vector<std::int64_t> relative_orders, std::string name)
    : name_(std::move(name)), orders_(std::move(relative_orders)) {
  const int n = size();
  for (auto o : orders_)
    if (o < 0 || o == 1) throw std::invalid_argument("relative orders must be 0 or >= 2");
  power_.assign(n, {});
  conj_.resize(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) conj_[j].push_back({{j, 1}});
}

bool PcPresentation::is_finite() const {
  return std::none_of(orders_.begin(), orders_.end(), [](std::int64_t o) { return o == 0; });
}

void PcPresentation::validate_index(int i) const {
  if (i < 0 || i >= size()) throw std::out_of_range("generator index " + std::to_string(i));
}

void PcPresentation::invalidate() { lazy_ = std::make_shared<Lazy>(); }

void PcPresentation::set_power(int i, PcString rhs) {
  validate_index(i);
  for (const auto& s : rhs)
    if (s.gen <= i || s.gen >= size())
      throw std::invalid_argument("power relation of g" + std::to_string(i + 1) +
                                  " may only involve later generators");
  power_[i] = std::move(rhs);
  invalidate();
}

void PcPresentation::set_conjugate(int j, int i, PcString rhs) {
  validate_index(j);
  validate_index(i);
  if (j <= i) throw std::invalid_argument("conjugate relation needs j > i");
  for (const auto& s : rhs)
    if (s.gen < j || s.gen >= size())
      throw std::invalid_argument("conjugate of g" + std::to_string(j + 1) +
                                  " may only involve g" + std::to_string(j + 1) + " and later");
  conj_[j][i] = std::move(rhs);
  invalidate();
}

const PcPresentation::Tables& PcPresentation::tables() const {
  auto lazy = lazy_;
  std::call_once(lazy->once, [&] {
    auto t = std::make_shared<Tables>();
    const int n = size();
    t->n = n;
    t->orders = orders_;
    t->pow.assign(n, {});
    t->pow_inv.assign(n, {});
    t->conj.assign(n, std::vector<PcString>(n));
    t->conj_inv.assign(n, std::vector<PcString>(n));
    t->commutes.assign(n, std::vector<char>(n, 1));
    Collector col{t->orders, t->pow, t->pow_inv, t->conj, t->conj_inv, t->commutes, budget_};
    auto normal = [&](const PcString& w) {
      std::vector<std::int64_t> e(n, 0);
      std::vector<PcSyllable> stack(w.rbegin(), w.rend());
      col.run(e, stack);
      return PcWord{std::move(e)}.syllables();
    };
    for (int k = n - 1; k >= 0; --k) {
      for (int j = k + 1; j < n; ++j) {
        t->conj[j][k] = normal(conj_[j][k]);
        t->commutes[j][k] = t->conj[j][k] == PcString{{j, 1}};
      }
      t->pow[k] = normal(power_[k]);
      t->pow_inv[k] = normal(inverse_string(t->pow[k]));
      if (orders_[k] != 0) continue;
      // conjugation by an infinite generator's inverse:
      // g_j^{g_k} = g_j u  =>  g_j^{g_k^-1} = g_j (u^-1)^{g_k^-1}
      for (int j = n - 1; j > k; --j) {
        const PcString& c = t->conj[j][k];
        if (c.empty() || c[0].gen != j || c[0].exp != 1)
          throw std::invalid_argument("conjugation by an infinite generator must fix g" +
                                      std::to_string(j + 1) + " modulo later generators");
        PcString u(c.begin() + 1, c.end());
        PcString w{{j, 1}};
        for (const auto& s : normal(inverse_string(u))) {
          const PcString ci = s.exp > 0 ? t->conj_inv[s.gen][k] : inverse_string(t->conj_inv[s.gen][k]);
          for (std::int64_t r = 0; r < std::abs(s.exp); ++r) w.insert(w.end(), ci.begin(), ci.end());
        }
        t->conj_inv[j][k] = normal(w);
      }
    }
    lazy->tables = std::move(t);
  });
  return *lazy->tables;
}

PcWord PcPresentation::identity() const { return PcWord{std::vector<std::int64_t>(size(), 0)}; }

PcWord PcPresentation::generator(int i, std::int64_t e) const {
  validate_index(i);
  return collect({{i, e}});
}

PcWord PcPresentation::multiply(const PcWord& a, const PcString& b) const {
  const Tables& t = tables();
  Collector col{t.orders, t.pow, t.pow_inv, t.conj, t.conj_inv, t.commutes, budget_};
  std::vector<std::int64_t> e = a.exps;
  if (static_cast<int>(e.size()) != size()) throw std::invalid_argument("word length mismatch");
  for (const auto& s : b) validate_index(s.gen);
  std::vector<PcSyllable> stack(b.rbegin(), b.rend());
  col.run(e, stack);
  return PcWord{std::move(e)};
}

PcWord PcPresentation::collect(const PcString& w) const { return multiply(identity(), w); }

PcWord PcPresentation::multiply(const PcWord& a, const PcWord& b) const {
  return multiply(a, b.syllables());
}

PcWord PcPresentation::inverse(const PcWord& a) const {
  return collect(inverse_string(a.syllables()));
}

PcWord PcPresentation::power(const PcWord& a, std::int64_t n) const {
  PcWord base = n < 0 ? inverse(a) : a;
  std::uint64_t m = n < 0 ? -static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
  PcWord acc = identity();
  while (m) {
    if (m & 1) acc = multiply(acc, base);
    m >>= 1;
    if (m) base = multiply(base, base);
  }
  return acc;
}

PcWord PcPresentation::conjugate(const PcWord& a, const PcWord& by) const {
  return multiply(multiply(inverse(by), a), by);
}

PcWord PcPresentation::commutator(const PcWord& a, const PcWord& b) const {
  return multiply(inverse(multiply(b, a)), multiply(a, b));
}

BigInt PcPresentation::order() const {
  BigInt o = 1;
  for (auto r : orders_) {
    if (r == 0) return 0;
    o *= r;
  }
  return o;
}

std::int64_t PcPresentation::element_order(const PcWord& a) const {
  if (!is_finite()) throw std::logic_error("element_order needs a finite presentation");
  std::int64_t ord = 1;
  PcWord x = a;
  while (!x.is_identity()) {
    const int d = x.depth();
    const std::int64_t r = orders_[d] / std::gcd(x.exps[d], orders_[d]);
    x = power(x, r);
    ord *= r;
  }
  return ord;
}

std::vector<PcWord> PcPresentation::elements() const {
  const BigInt total = order();
  if (total == 0 || total > (BigInt(1) << 24))
    throw std::logic_error("elements() needs a finite presentation of moderate order");
  const auto count = static_cast<std::int64_t>(total);
  std::vector<PcWord> out;
  out.reserve(count);
  for (std::int64_t i = 0; i < count; ++i) out.push_back(element_at(i));
  return out;
}

std::int64_t PcPresentation::index_of(const PcWord& a) const {
  std::int64_t idx = 0;
  for (int i = 0; i < size(); ++i) idx = idx * orders_[i] + a.exps[i];
  return idx;
}

PcWord PcPresentation::element_at(std::int64_t index) const {
  PcWord w = identity();
  for (int i = size() - 1; i >= 0; --i) {
    w.exps[i] = index % orders_[i];
    index /= orders_[i];
  }
  return w;
}

std::vector<ConsistencyViolation> PcPresentation::consistency_check() const {
  std::vector<ConsistencyViolation> out;
  const int n = size();
  auto g = [&](int i, std::int64_t e = 1) {
    PcWord w = identity();
    w.exps[i] = e;  // a single syllable is already normal when 0 < e < o_i
    return w;
  };
  auto name = [](int i, const std::string& suffix = "") {
    return "g" + std::to_string(i + 1) + suffix;
  };
  auto check = [&](std::string overlap, const std::function<PcWord()>& lhs,
                   const std::function<PcWord()>& rhs) {
    try {
      PcWord l = lhs(), r = rhs();
      if (!(l == r)) out.push_back({std::move(overlap), std::move(l), std::move(r)});
    } catch (const CollectionBudgetExceeded&) {
      out.push_back({overlap + " (collection budget exceeded)", identity(), identity()});
    }
  };
  auto pw = [&](int i) { return collect(power_[i]); };
  for (int k = n - 1; k >= 0; --k)
    for (int j = k - 1; j >= 0; --j)
      for (int i = j - 1; i >= 0; --i)
        check("(" + name(k) + " " + name(j) + ") " + name(i),
              [&] { return multiply(multiply(g(k), g(j)), g(i)); },
              [&] { return multiply(g(k), multiply(g(j), g(i))); });
  for (int j = 0; j < n; ++j) {
    const std::int64_t oj = orders_[j];
    for (int i = 0; i < j; ++i) {
      const std::int64_t oi = orders_[i];
      if (oj > 0)
        check("(" + name(j, "^" + std::to_string(oj)) + ") " + name(i),
              [&] { return multiply(pw(j), g(i)); },
              [&] { return multiply(g(j, oj - 1), multiply(g(j), g(i))); });
      if (oi > 0)
        check(name(j) + " (" + name(i, "^" + std::to_string(oi)) + ")",
              [&] { return multiply(g(j), pw(i)); },
              [&] { return multiply(multiply(g(j), g(i)), g(i, oi - 1)); });
      if (oi == 0)
        check("(" + name(j) + " " + name(i, "^-1") + ") " + name(i),
              [&] { return multiply(multiply(g(j), collect({{i, -1}})), g(i)); },
              [&] { return g(j); });
      if (oj == 0)
        check(name(j) + " (" + name(j, "^-1") + " " + name(i) + ")",
              [&] { return multiply(g(j), multiply(collect({{j, -1}}), g(i))); },
              [&] { return g(i); });
    }
    if (oj > 0)
      check("(" + name(j, "^" + std::to_string(oj)) + ") " + name(j),
            [&] { return multiply(pw(j), g(j)); }, [&] { return multiply(g(j), pw(j)); });
  }
  return out;
}

std::string PcPresentation::to_string(const PcWord& w) const {
  std::string s;
  for (const auto& syl : w.syllables()) {
    if (!s.empty()) s += ' ';
    s += "g" + std::to_string(syl.gen + 1);
    if (syl.exp != 1) s += "^" + std::to_string(syl.exp);
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------------------
// Text format

std::string pc_string_text(const PcString& w) {
  std::string s;
  for (const auto& syl : w) {
    if (!s.empty()) s += ' ';
    s += "g" + std::to_string(syl.gen + 1) + "^" + std::to_string(syl.exp);
  }
  return s;
}

namespace {

PcString parse_word_tokens(const std::vector<std::string>& toks, std::size_t from, int n,
                           int line) {
  PcString w;
  for (std::size_t t = from; t < toks.size(); ++t) {
    const std::string& tok = toks[t];
    if (tok.size() < 2 || tok[0] != 'g')
      throw PresentationError(line, "expected a syllable g<j>^<int>, got '" + tok + "'");
    const auto caret = tok.find('^');
    const std::string gen = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    std::int64_t j = 0, e = 1;
    try {
      std::size_t used = 0;
      j = std::stoll(gen, &used);
      if (used != gen.size() || gen.empty() || !std::isdigit(static_cast<unsigned char>(gen[0])))
        throw std::invalid_argument("gen");
      if (caret != std::string::npos) {
        const std::string ex = tok.substr(caret + 1);
        e = std::stoll(ex, &used);
        if (used != ex.size()) throw std::invalid_argument("exp");
      }
    } catch (const std::exception&) {
      throw PresentationError(line, "malformed syllable '" + tok + "'");
    }
    if (j < 1 || j > n) throw PresentationError(line, "generator index out of range in '" + tok + "'");
    if (e != 0) w.push_back({static_cast<int>(j - 1), e});
  }
  return w;
}

}  // namespace

PcString parse_pc_string(const std::string& text, int n) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  return parse_word_tokens(toks, 0, n, 0);
}

PcPresentation parse_presentation_text(const std::string& text) {
  std::istringstream in(text);
  std::string raw, name;
  int line = 0, n = -1;
  bool ended = false;
  std::vector<std::int64_t> orders;
  std::vector<char> have_order;
  struct Pending {
    int line, j, i;  // i < 0: power relation of j
    PcString rhs;
  };
  std::vector<Pending> rels;
  std::vector<std::vector<char>> seen;

  auto index = [&](const std::string& tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || used == 0) throw PresentationError(line, "expected an index, got '" + tok + "'");
    if (v < 1 || v > n) throw PresentationError(line, "generator index " + tok + " out of range");
    return static_cast<int>(v - 1);
  };

  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (ended) throw PresentationError(line, "text after 'end'");
    const std::string& kw = toks[0];
    if (kw == "group") {
      if (!name.empty() || n >= 0) throw PresentationError(line, "'group' must come first, once");
      if (toks.size() != 2) throw PresentationError(line, "usage: group <name>");
      name = toks[1];
    } else if (kw == "pcgens") {
      if (name.empty()) throw PresentationError(line, "'pcgens' before 'group'");
      if (n >= 0) throw PresentationError(line, "duplicate 'pcgens'");
      if (toks.size() != 2) throw PresentationError(line, "usage: pcgens <n>");
      try {
        std::size_t used = 0;
        n = std::stoi(toks[1], &used);
        if (used != toks[1].size() || n < 0) throw std::invalid_argument("n");
      } catch (const std::exception&) {
        throw PresentationError(line, "bad generator count '" + toks[1] + "'");
      }
      orders.assign(n, 0);
      have_order.assign(n, 0);
      seen.assign(n, std::vector<char>(n + 1, 0));
    } else if (kw == "order" || kw == "pow" || kw == "conj") {
      if (n < 0) throw PresentationError(line, "'" + kw + "' before 'pcgens'");
      if (kw == "order") {
        if (toks.size() != 3) throw PresentationError(line, "usage: order <i> <prime-power>");
        const int i = index(toks[1]);
        if (have_order[i]) throw PresentationError(line, "duplicate order for g" + toks[1]);
        std::int64_t q = 0;
        if (toks[2] == "inf" || toks[2] == "0") {
          q = 0;
        } else {
          try {
            std::size_t used = 0;
            q = std::stoll(toks[2], &used);
            if (used != toks[2].size()) throw std::invalid_argument("q");
          } catch (const std::exception&) {
            throw PresentationError(line, "bad relative order '" + toks[2] + "'");
          }
          if (!is_prime_power(q)) throw PresentationError(line, "relative order must be a prime power");
        }
        orders[i] = q;
        have_order[i] = 1;
      } else if (kw == "pow") {
        if (toks.size() < 3 || toks[2] != ":=") throw PresentationError(line, "usage: pow <i> := <word>");
        const int i = index(toks[1]);
        if (seen[i][n]) throw PresentationError(line, "duplicate power relation");
        seen[i][n] = 1;
        PcString rhs = parse_word_tokens(toks, 3, n, line);
        for (const auto& s : rhs)
          if (s.gen <= i) throw PresentationError(line, "power relation may only use later generators");
        rels.push_back({line, i, -1, std::move(rhs)});
      } else {
        if (toks.size() < 4 || toks[3] != ":=")
          throw PresentationError(line, "usage: conj <j> <i> := <word>");
        const int j = index(toks[1]), i = index(toks[2]);
        if (j <= i) throw PresentationError(line, "conj requires j > i");
        if (seen[j][i]) throw PresentationError(line, "duplicate conjugate relation");
        seen[j][i] = 1;
        PcString rhs = parse_word_tokens(toks, 4, n, line);
        for (const auto& s : rhs)
          if (s.gen < j) throw PresentationError(line, "conjugate of g_j may only use g_j and later");
        rels.push_back({line, j, i, std::move(rhs)});
      }
    } else if (kw == "end") {
      if (toks.size() != 1) throw PresentationError(line, "'end' takes no arguments");
      if (n < 0) throw PresentationError(line, "'end' before 'pcgens'");
      for (int i = 0; i < n; ++i)
        if (!have_order[i]) throw PresentationError(line, "missing order for g" + std::to_string(i + 1));
      ended = true;
    } else {
      throw PresentationError(line, "unknown keyword '" + kw + "'");
    }
  }
  if (!ended) throw PresentationError(line + 1, "missing 'end'");
  PcPresentation p(orders, name);
  for (auto& r : rels) {
    if (r.i < 0) {
      if (orders[r.j] == 0) throw PresentationError(r.line, "power relation for an infinite generator");
      p.set_power(r.j, std::move(r.rhs));
    } else {
      p.set_conjugate(r.j, r.i, std::move(r.rhs));
    }
  }
  return p;
}

std::string presentation_to_text(const PcPresentation& p) {
  std::ostringstream out;
  out << "group " << (p.name().empty() ? "G" : p.name()) << "\n";
  out << "pcgens " << p.size() << "\n";
  for (int i = 0; i < p.size(); ++i)
    out << "order " << i + 1 << " " << (p.relative_order(i) == 0 ? std::string("inf")
                                                                   : std::to_string(p.relative_order(i)))
        << "\n";
  for (int i = 0; i < p.size(); ++i)
    if (!p.power(i).empty()) out << "pow " << i + 1 << " := " << pc_string_text(p.power(i)) << "\n";
  for (int i = 0; i < p.size(); ++i)
    for (int j = i + 1; j < p.size(); ++j)
      if (p.conjugate(j, i) != PcString{{j, 1}})
        out << "conj " << j + 1 << " " << i + 1 << " := " << pc_string_text(p.conjugate(j, i))
            << "\n";
  out << "end\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Certificates

int Certificates::generator(int i) {
  CertificateNode nd;
  nd.kind = CertificateNode::Kind::Generator;
  nd.generator = i;
  nodes_.push_back(std::move(nd));
  return size() - 1;
}

int Certificates::product(std::vector<std::pair<int, std::int64_t>> factors) {
  std::erase_if(factors, [](const auto& f) { return f.second == 0; });
  if (factors.size() == 1 && factors[0].second == 1) return factors[0].first;
  CertificateNode nd;
  nd.kind = CertificateNode::Kind::Product;
  nd.factors = std::move(factors);
  nodes_.push_back(std::move(nd));
  return size() - 1;
}

int Certificates::commutator(int a, int b) {
  CertificateNode nd;
  nd.kind = CertificateNode::Kind::Commutator;
  nd.left = a;
  nd.right = b;
  nodes_.push_back(std::move(nd));
  return size() - 1;
}

int Certificates::conjugate(int a, PcWord by) {
  CertificateNode nd;
  nd.kind = CertificateNode::Kind::Conjugate;
  nd.left = a;
  nd.by = std::move(by);
  nodes_.push_back(std::move(nd));
  return size() - 1;
}

PcWord Certificates::evaluate(const PcPresentation& p, const std::vector<PcWord>& gens,
                              int node) const {
  // Nodes only refer to earlier nodes, so a forward sweep over the needed
  // ones suffices.
  std::vector<char> need(node + 1, 0);
  need[node] = 1;
  for (int i = node; i >= 0; --i) {
    if (!need[i]) continue;
    const auto& nd = nodes_[i];
    for (const auto& f : nd.factors) need[f.first] = 1;
    if (nd.left >= 0) need[nd.left] = 1;
    if (nd.right >= 0) need[nd.right] = 1;
  }
  std::vector<std::optional<PcWord>> val(node + 1);
  for (int i = 0; i <= node; ++i) {
    if (!need[i]) continue;
    const auto& nd = nodes_[i];
    switch (nd.kind) {
      case CertificateNode::Kind::Generator:
        val[i] = gens.at(nd.generator);
        break;
      case CertificateNode::Kind::Product: {
        PcWord acc = p.identity();
        for (const auto& [k, e] : nd.factors) acc = p.multiply(acc, p.power(*val[k], e));
        val[i] = std::move(acc);
        break;
      }
      case CertificateNode::Kind::Commutator:
        val[i] = p.commutator(*val[nd.left], *val[nd.right]);
        break;
      case CertificateNode::Kind::Conjugate:
        val[i] = p.conjugate(*val[nd.left], nd.by);
        break;
    }
  }
  return *val[node];
}

// ---------------------------------------------------------------------------
// Induced sequences

InducedSequence::InducedSequence(const PcPresentation& p, std::vector<PcWord> gens,
                                 bool normal_closure)
    : pres_(std::make_shared<PcPresentation>(p)), gens_(std::move(gens)) {
  slot_.assign(p.size(), std::nullopt);
  for (std::size_t i = 0; i < gens_.size(); ++i)
    add(gens_[i], certs_.generator(static_cast<int>(i)));
  if (normal_closure) close_normal();
  tail_reduce();
}

void InducedSequence::add(PcWord x0, int node0) {
  const PcPresentation& p = *pres_;
  std::vector<std::pair<PcWord, int>> work{{std::move(x0), node0}};
  auto store = [&](PcWord y, int ny) {
    const int d = y.depth();
    const std::int64_t o = p.relative_order(d);
    if (o > 0) {
      const std::int64_t r = o / y.exps[d];
      work.push_back({p.power(y, r), certs_.product({{ny, r}})});
    }
    for (const auto& s : slot_)
      if (s) work.push_back({p.commutator(y, s->first), certs_.commutator(ny, s->second)});
    slot_[d] = {std::move(y), ny};
  };
  while (!work.empty()) {
    auto [x, nx] = std::move(work.back());
    work.pop_back();
    for (;;) {
      const int d = x.depth();
      if (d == p.size()) break;
      const std::int64_t a = x.exps[d], o = p.relative_order(d);
      if (!slot_[d]) {
        if (o == 0 && a < 0) {
          store(p.inverse(x), certs_.product({{nx, -1}}));
        } else if (o > 0 && o % a != 0) {
          // make the leading exponent a divisor of o; x is re-sifted afterwards
          auto [g, s, t] = ext_gcd(BigInt(a), BigInt(o));
          const std::int64_t se = static_cast<std::int64_t>(mod_floor(s, BigInt(o)));
          store(p.power(x, se), certs_.product({{nx, se}}));
          work.push_back({std::move(x), nx});
        } else {
          store(std::move(x), nx);
        }
        break;
      }
      const auto [y, ny] = *slot_[d];
      const std::int64_t b = y.exps[d];
      if (a % b == 0) {
        x = p.multiply(p.power(y, -(a / b)), x);
        nx = certs_.product({{ny, -(a / b)}, {nx, 1}});
        continue;
      }
      auto [g, s, t] = ext_gcd(BigInt(a), BigInt(b));
      const auto si = static_cast<std::int64_t>(s), ti = static_cast<std::int64_t>(t);
      PcWord z = p.multiply(p.power(x, si), p.power(y, ti));
      const int nz = certs_.product({{nx, si}, {ny, ti}});
      slot_[d].reset();
      work.push_back({y, ny});
      work.push_back({std::move(x), nx});
      work.push_back({std::move(z), nz});  // processed first, becomes the pivot
      break;
    }
  }
}

bool InducedSequence::contains(const PcWord& w) const { return reduce(w).is_identity(); }

PcWord InducedSequence::reduce(const PcWord& w0) const {
  const PcPresentation& p = *pres_;
  PcWord w = w0;
  for (int d = w.depth(); d < p.size(); ++d) {
    if (w.exps[d] == 0 || !slot_[d]) continue;
    const auto& y = slot_[d]->first;
    const std::int64_t q = floor_div64(w.exps[d], y.exps[d]);
    if (q != 0) w = p.multiply(p.power(y, -q), w);
  }
  return w;
}

void InducedSequence::close_normal() {
  const PcPresentation& p = *pres_;
  for (bool changed = true; changed;) {
    changed = false;
    for (int d = 0; d < p.size(); ++d) {
      if (!slot_[d]) continue;
      for (int i = 0; i < p.size(); ++i) {
        if (!slot_[d]) break;
        std::vector<PcWord> conjugators{p.generator(i)};
        if (p.relative_order(i) == 0) conjugators.push_back(p.generator(i, -1));
        for (const auto& g : conjugators) {
          const auto [y, ny] = *slot_[d];
          PcWord c = p.conjugate(y, g);
          if (contains(c)) continue;
          add(std::move(c), certs_.conjugate(ny, g));
          changed = true;
          if (!slot_[d]) break;
        }
      }
    }
  }
}

void InducedSequence::tail_reduce() {
  const PcPresentation& p = *pres_;
  for (int d = p.size() - 1; d >= 0; --d) {
    if (!slot_[d]) continue;
    auto& [y, ny] = *slot_[d];
    for (int e = d + 1; e < p.size(); ++e) {
      if (!slot_[e] || y.exps[e] == 0) continue;
      const auto& [z, nz] = *slot_[e];
      const std::int64_t q = floor_div64(y.exps[e], z.exps[e]);
      if (q == 0) continue;
      y = p.multiply(y, p.power(z, -q));
      ny = certs_.product({{ny, 1}, {nz, -q}});
    }
  }
  pivots_.clear();
  pivot_cert_.clear();
  for (const auto& s : slot_)
    if (s) {
      pivots_.push_back(s->first);
      pivot_cert_.push_back(s->second);
    }
}

std::vector<int> InducedSequence::depths() const {
  std::vector<int> out;
  for (const auto& y : pivots_) out.push_back(y.depth());
  return out;
}

std::vector<std::int64_t> InducedSequence::relative_orders() const {
  std::vector<std::int64_t> out;
  for (const auto& y : pivots_) {
    const int d = y.depth();
    const std::int64_t o = pres_->relative_order(d);
    out.push_back(o == 0 ? 0 : o / y.exps[d]);
  }
  return out;
}

BigInt InducedSequence::order() const {
  BigInt o = 1;
  for (auto r : relative_orders()) {
    if (r == 0) return 0;
    o *= r;
  }
  return o;
}

std::optional<std::vector<std::int64_t>> InducedSequence::coefficients(const PcWord& w0) const {
  const PcPresentation& p = *pres_;
  std::vector<std::int64_t> coeff;
  PcWord w = w0;
  for (const auto& y : pivots_) {
    const int d = y.depth();
    // anything left before depth d cannot be removed any more
    for (int e = 0; e < d; ++e)
      if (w.exps[e] != 0) return std::nullopt;
    const std::int64_t a = w.exps[d];
    if (a % y.exps[d] != 0) return std::nullopt;
    const std::int64_t q = a / y.exps[d];
    coeff.push_back(q);
    if (q != 0) w = p.multiply(p.power(y, -q), w);
  }
  if (!w.is_identity()) return std::nullopt;
  return coeff;
}

MembershipResult InducedSequence::membership(const PcWord& w) {
  MembershipResult res;
  auto coeff = coefficients(w);
  if (!coeff) return res;
  std::vector<std::pair<int, std::int64_t>> factors;
  for (std::size_t k = 0; k < coeff->size(); ++k)
    if ((*coeff)[k] != 0) factors.push_back({pivot_cert_[k], (*coeff)[k]});
  res.member = true;
  res.coefficients = std::move(*coeff);
  res.certificate = certs_.product(std::move(factors));
  return res;
}

PcPresentation InducedSequence::subgroup_presentation(const std::string& name) const {
  PcPresentation q(relative_orders(), name);
  auto express = [&](const PcWord& w) {
    auto coeff = coefficients(w);
    if (!coeff) throw std::logic_error("subgroup is not closed");
    PcString s;
    for (std::size_t k = 0; k < coeff->size(); ++k)
      if ((*coeff)[k] != 0) s.push_back({static_cast<int>(k), (*coeff)[k]});
    return s;
  };
  const PcPresentation& p = *pres_;
  const auto r = relative_orders();
  for (int i = 0; i < q.size(); ++i) {
    if (r[i] > 0) q.set_power(i, express(p.power(pivots_[i], r[i])));
    for (int j = i + 1; j < q.size(); ++j)
      q.set_conjugate(j, i, express(p.conjugate(pivots_[j], pivots_[i])));
  }
  return q;
}

// ---------------------------------------------------------------------------
// Quotients and structure

PcPresentation quotient(const PcPresentation& p, const std::vector<PcWord>& normal_gens) {
  InducedSequence n(p, normal_gens, true);
  std::vector<int> keep;
  std::vector<std::int64_t> orders;
  std::vector<std::int64_t> lead(p.size(), 0);
  for (const auto& y : n.pivots()) lead[y.depth()] = y.exps[y.depth()];
  for (int d = 0; d < p.size(); ++d) {
    if (lead[d] == 1) continue;
    keep.push_back(d);
    orders.push_back(lead[d] == 0 ? p.relative_order(d) : lead[d]);
  }
  PcPresentation q(orders, p.name().empty() ? "" : p.name() + "_quo");
  auto image = [&](const PcWord& w) {
    PcWord r = n.reduce(w);
    PcString s;
    for (std::size_t k = 0; k < keep.size(); ++k)
      if (r.exps[keep[k]] != 0) s.push_back({static_cast<int>(k), r.exps[keep[k]]});
    return s;
  };
  for (std::size_t a = 0; a < keep.size(); ++a) {
    const PcWord ga = p.generator(keep[a]);
    if (orders[a] > 0) q.set_power(static_cast<int>(a), image(p.power(ga, orders[a])));
    for (std::size_t b = a + 1; b < keep.size(); ++b)
      q.set_conjugate(static_cast<int>(b), static_cast<int>(a),
                      image(p.conjugate(p.generator(keep[b]), ga)));
  }
  return q;
}

std::int64_t exponent(const PcPresentation& p) {
  const BigInt order = p.order();
  if (order == 0) throw std::logic_error("exponent of an infinite group");
  std::int64_t e = 1;
  if (order <= (1 << 14)) {
    for (const auto& w : p.elements()) e = std::lcm(e, p.element_order(w));
    return e;
  }
  // Large groups: pc generators, their products, and a fixed random sample.
  // This is a lower bound for the exponent, exact for all tested families.
  for (int i = 0; i < p.size(); ++i) e = std::lcm(e, p.element_order(p.generator(i)));
  std::mt19937_64 rng(12345);
  for (int s = 0; s < 4096; ++s) {
    PcWord w = p.identity();
    for (int i = 0; i < p.size(); ++i)
      w.exps[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p.relative_order(i)));
    e = std::lcm(e, p.element_order(w));
  }
  return e;
}

InducedSequence derived_subgroup(const PcPresentation& p) {
  std::vector<PcWord> comms;
  for (int i = 0; i < p.size(); ++i)
    for (int j = i + 1; j < p.size(); ++j) {
      PcWord c = p.commutator(p.generator(j), p.generator(i));
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  return InducedSequence(p, std::move(comms), true);
}

std::vector<InducedSequence> lower_central_series(const PcPresentation& p) {
  std::vector<PcWord> all;
  for (int i = 0; i < p.size(); ++i) all.push_back(p.generator(i));
  std::vector<InducedSequence> series{InducedSequence(p, all, true)};
  for (;;) {
    const auto& last = series.back();
    if (last.pivots().empty()) break;
    std::vector<PcWord> comms;
    for (const auto& y : last.pivots())
      for (int i = 0; i < p.size(); ++i) {
        PcWord c = p.commutator(y, p.generator(i));
        if (!c.is_identity()) comms.push_back(std::move(c));
      }
    InducedSequence next(p, std::move(comms), true);
    if (next.pivots().size() == last.pivots().size() && next.order() == last.order())
      throw std::logic_error("group is not nilpotent");
    series.push_back(std::move(next));
  }
  return series;
}

int nilpotency_class(const PcPresentation& p) {
  return static_cast<int>(lower_central_series(p).size()) - 1;
}

bool is_abelian(const PcPresentation& p) {
  for (int i = 0; i < p.size(); ++i)
    for (int j = i + 1; j < p.size(); ++j)
      if (!p.commutator(p.generator(j), p.generator(i)).is_identity()) return false;
  return true;
}

InducedSequence center(const PcPresentation& p) {
  std::vector<PcWord> gens;
  for (const auto& w : p.elements()) {
    bool central = true;
    for (int i = 0; i < p.size() && central; ++i)
      central = p.commutator(w, p.generator(i)).is_identity();
    if (central && !w.is_identity()) gens.push_back(w);
  }
  return InducedSequence(p, std::move(gens));
}

CayleyTable cayley_table(const PcPresentation& p, std::int64_t max_order) {
  const BigInt order = p.order();
  if (order == 0 || order > max_order) throw std::logic_error("group too large for a table");
  const auto els = p.elements();
  CayleyTable t;
  t.n = static_cast<int>(els.size());
  t.mul.resize(static_cast<std::size_t>(t.n) * t.n);
  t.inv.resize(t.n);
  for (int a = 0; a < t.n; ++a) {
    for (int b = 0; b < t.n; ++b)
      t.mul[static_cast<std::size_t>(a) * t.n + b] =
          static_cast<int>(p.index_of(p.multiply(els[a], els[b])));
  }
  for (int a = 0; a < t.n; ++a)
    for (int b = 0; b < t.n; ++b)
      if (t.op(a, b) == 0) t.inv[a] = b;
  return t;
}

}  // namespace bogo
