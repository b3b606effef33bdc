#include "bogo/hallbasis.hpp"

#include <cctype>
#include <stdexcept>

namespace bogo {

BasicCommutator BasicCommutator::gen(int i) {
  BasicCommutator x;
  x.generator = i;
  x.weight = 1;
  return x;
}

BasicCommutator BasicCommutator::bracket(const BasicCommutator& u, const BasicCommutator& v) {
  BasicCommutator x;
  x.left = std::make_shared<const BasicCommutator>(u);
  x.right = std::make_shared<const BasicCommutator>(v);
  x.weight = u.weight + v.weight;
  return x;
}

std::optional<int> BasisTable::pair_index(int u, int v) const {
  auto it = pairs_.find({u, v});
  if (it == pairs_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> BasisTable::index_of(const BasicCommutator& x) const {
  if (x.is_generator()) {
    if (x.generator < k_ && x.generator >= 0) return x.generator;
    return std::nullopt;
  }
  auto l = index_of(*x.left);
  if (!l) return std::nullopt;
  auto r = index_of(*x.right);
  if (!r) return std::nullopt;
  return pair_index(*l, *r);
}

std::optional<int> BasisTable::find(const std::string& rendered) const {
  auto it = by_name_.find(rendered);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::string BasisTable::generator_name(int g) const {
  if (k_ <= 26) return std::string(1, static_cast<char>('a' + g));
  return "g" + std::to_string(g + 1);
}

namespace {

// Rendering of entry i as the list of its left-normed components.
std::string render_entry(const std::vector<BasisEntry>& e, const std::vector<std::string>& done,
                         int i, const BasisTable& t) {
  const BasisEntry& x = e[i];
  if (x.left < 0) return t.generator_name(x.expr.generator);
  const std::string& l = done[x.left];
  const std::string& r = done[x.right];
  if (e[x.left].left < 0) return "[" + l + "," + r + "]";
  return l.substr(0, l.size() - 1) + "," + r + "]";
}

}  // namespace

BasisTable generate_basis(int k, int c) {
  if (k <= 0) throw std::invalid_argument("generate_basis: generator count must be positive");
  if (c <= 0) throw std::invalid_argument("generate_basis: class bound must be positive");
  BasisTable t;
  t.k_ = k;
  t.c_ = c;
  t.layer_start_.assign(c + 2, 0);
  for (int g = 0; g < k; ++g) {
    BasisEntry e;
    e.expr = BasicCommutator::gen(g);
    t.entries_.push_back(e);
  }
  t.layer_start_[1] = 0;
  t.layer_start_[2] = k;
  for (int w = 2; w <= c; ++w) {
    const int n = t.size();
    for (int u = 0; u < n; ++u) {
      const int wu = t.entries_[u].weight;
      for (int v = 0; v < u; ++v) {
        if (wu + t.entries_[v].weight != w) continue;
        const int u2 = t.entries_[u].right;
        if (u2 >= 0 && u2 > v) continue;
        BasisEntry e;
        e.expr = BasicCommutator::bracket(t.entries_[u].expr, t.entries_[v].expr);
        e.left = u;
        e.right = v;
        e.weight = w;
        t.pairs_[{u, v}] = t.size();
        t.entries_.push_back(e);
      }
    }
    t.layer_start_[w + 1] = t.size();
  }
  if (c + 1 < static_cast<int>(t.layer_start_.size())) t.layer_start_[c + 1] = t.size();
  t.rendered_.reserve(t.size());
  for (int i = 0; i < t.size(); ++i) {
    t.rendered_.push_back(render_entry(t.entries_, t.rendered_, i, t));
    t.by_name_[t.rendered_.back()] = i;
  }
  return t;
}

bool is_basic(const BasicCommutator& candidate, const BasisTable& table) {
  return table.index_of(candidate).has_value();
}

long long witt_number(int k, int w) {
  auto mobius = [](int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
    if (n > 1) result = -result;
    return result;
  };
  long long sum = 0;
  for (int d = 1; d <= w; ++d) {
    if (w % d) continue;
    long long p = 1;
    for (int i = 0; i < w / d; ++i) p *= k;
    sum += mobius(d) * p;
  }
  return sum / w;
}

std::string render(const BasicCommutator& x, const BasisTable& table) {
  if (x.is_generator()) return table.generator_name(x.generator);
  std::string l = render(*x.left, table);
  std::string r = render(*x.right, table);
  if (x.left->is_generator()) return "[" + l + "," + r + "]";
  return l.substr(0, l.size() - 1) + "," + r + "]";
}

namespace {

struct BracketParser {
  const std::string& s;
  const BasisTable& t;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("parse_commutator: " + why + " at offset " + std::to_string(pos) +
                                " in '" + s + "'");
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  BasicCommutator atom() {
    skip();
    if (pos >= s.size()) fail("unexpected end");
    if (s[pos] == '[') {
      ++pos;
      BasicCommutator acc = atom();
      int parts = 1;
      for (;;) {
        skip();
        if (pos >= s.size()) fail("unterminated bracket");
        if (s[pos] == ']') {
          ++pos;
          break;
        }
        if (s[pos] != ',') fail("expected ',' or ']'");
        ++pos;
        acc = BasicCommutator::bracket(acc, atom());
        ++parts;
      }
      if (parts < 2) fail("bracket needs at least two entries");
      return acc;
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string name = s.substr(start, pos - start);
    for (int g = 0; g < t.generator_count(); ++g)
      if (t.generator_name(g) == name) return BasicCommutator::gen(g);
    fail("unknown generator '" + name + "'");
  }
};

}  // namespace

BasicCommutator parse_commutator(const std::string& text, const BasisTable& table) {
  BracketParser p{text, table};
  BasicCommutator x = p.atom();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return x;
}

}  // namespace bogo
