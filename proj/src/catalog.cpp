#include "bogo/catalog.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

namespace bogo {

namespace {

using Invariant = std::tuple<int, int, int, bool>;  // order, |C(x)|, #p-th roots, x in Frattini

struct TableData {
  CayleyTable t;
  int p = 0;
  std::vector<Invariant> inv;
  std::vector<char> frattini;
};

std::vector<char> closure(const CayleyTable& t, const std::vector<int>& gens) {
  std::vector<char> in(t.n, 0);
  std::vector<int> queue{0};
  in[0] = 1;
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (int g : gens) {
      const int x = t.op(queue[k], g);
      if (!in[x]) {
        in[x] = 1;
        queue.push_back(x);
      }
    }
  return in;
}

int smallest_prime_factor(int n) {
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

TableData table_data(const PcPresentation& g) {
  TableData d;
  d.t = cayley_table(g, 1 << 10);
  const int n = d.t.n;
  d.p = n > 1 ? smallest_prime_factor(n) : 1;
  auto pow = [&](int x, int e) {
    int r = 0;
    for (int i = 0; i < e; ++i) r = d.t.op(r, x);
    return r;
  };
  std::vector<int> gens;
  std::vector<int> roots(n, 0);
  for (int x = 0; x < n; ++x) {
    const int xp = pow(x, d.p);
    gens.push_back(xp);
    ++roots[xp];
    for (int y = 0; y < n; ++y) gens.push_back(d.t.op(d.t.op(d.t.inv[x], d.t.inv[y]), d.t.op(x, y)));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  d.frattini = closure(d.t, gens);
  for (int x = 0; x < n; ++x) {
    int ord = 1;
    for (int y = x; y != 0; y = d.t.op(y, x)) ++ord;
    int cent = 0;
    for (int y = 0; y < n; ++y) cent += d.t.op(x, y) == d.t.op(y, x);
    d.inv.emplace_back(ord, cent, roots[x], d.frattini[x] != 0);
  }
  return d;
}

}  // namespace

bool isomorphic(const PcPresentation& a, const PcPresentation& b) {
  if (a.order() != b.order()) return false;
  const TableData da = table_data(a), db = table_data(b);
  const int n = da.t.n;
  {
    auto sa = da.inv, sb = db.inv;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  // Generators of A: a basis modulo the Frattini subgroup, preferring
  // elements whose invariant is rare so the image search stays narrow.
  std::map<Invariant, int> freq;
  for (const auto& v : db.inv) ++freq[v];
  std::vector<int> order(n);
  for (int x = 0; x < n; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return freq[da.inv[x]] < freq[da.inv[y]]; });
  std::vector<int> xs;
  {
    std::vector<int> base;
    for (int x = 0; x < n; ++x)
      if (da.frattini[x]) base.push_back(x);
    for (;;) {
      std::vector<int> gens = base;
      gens.insert(gens.end(), xs.begin(), xs.end());
      const auto in = closure(da.t, gens);
      if (std::all_of(in.begin(), in.end(), [](char c) { return c != 0; })) break;
      for (int x : order)
        if (!in[x]) {
          xs.push_back(x);
          break;
        }
    }
  }
  std::vector<std::vector<int>> candidates(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (int y = 0; y < n; ++y)
      if (db.inv[y] == da.inv[xs[i]]) candidates[i].push_back(y);

  std::vector<int> hs;
  // Extends the map along right multiplication by the chosen generators;
  // fails on any clash, which also rules out non-injective maps.
  auto consistent = [&](bool complete) {
    std::vector<int> phi(n, -1), used(n, -1);
    phi[0] = 0;
    used[0] = 0;
    std::vector<int> queue{0};
    for (std::size_t k = 0; k < queue.size(); ++k) {
      const int g = queue[k];
      for (std::size_t j = 0; j < hs.size(); ++j) {
        const int gx = da.t.op(g, xs[j]);
        const int im = db.t.op(phi[g], hs[j]);
        if (phi[gx] < 0) {
          if (used[im] >= 0) return false;
          phi[gx] = im;
          used[im] = gx;
          queue.push_back(gx);
        } else if (phi[gx] != im) {
          return false;
        }
      }
    }
    return !complete || static_cast<int>(queue.size()) == n;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t i) {
    if (i == xs.size()) return consistent(true);
    for (int y : candidates[i]) {
      hs.push_back(y);
      if (consistent(false) && search(i + 1)) return true;
      hs.pop_back();
    }
    return false;
  };
  return search(0);
}

std::vector<PcPresentation> central_extensions(const PcPresentation& k, int p) {
  const int n = k.size();
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i) rel.push_back({i, -1});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) rel.push_back({j, i});
  const int r = static_cast<int>(rel.size());
  std::vector<std::int64_t> orders = k.relative_orders();
  orders.push_back(p);
  std::vector<int> v(r, 0);
  std::vector<PcPresentation> out;
  for (;;) {
    PcPresentation e(orders, k.name());
    for (int t = 0; t < r; ++t) {
      const auto [j, i] = rel[t];
      PcString rhs = i < 0 ? k.power(j) : k.conjugate(j, i);
      if (v[t] != 0) rhs.push_back({n, v[t]});
      if (i < 0)
        e.set_power(j, std::move(rhs));
      else
        e.set_conjugate(j, i, std::move(rhs));
    }
    if (e.consistency_check().empty()) out.push_back(std::move(e));
    int t = 0;
    while (t < r && ++v[t] == p) v[t++] = 0;
    if (t == r) break;
  }
  return out;
}

std::vector<std::vector<PcPresentation>> p_groups_up_to(int p, int n) {
  std::vector<std::vector<PcPresentation>> levels(n + 1);
  levels[0].push_back(PcPresentation({}, "trivial"));
  if (n == 0) return levels;
  levels[1].push_back(PcPresentation({p}, "cyclic"));
  for (int m = 2; m <= n; ++m) {
    std::map<std::vector<Invariant>, std::vector<int>> buckets;
    for (const auto& k : levels[m - 1])
      for (auto& e : central_extensions(k, p)) {
        auto inv = table_data(e).inv;
        std::sort(inv.begin(), inv.end());
        auto& bucket = buckets[inv];
        const bool seen = std::any_of(bucket.begin(), bucket.end(),
                                      [&](int idx) { return isomorphic(levels[m][idx], e); });
        if (seen) continue;
        bucket.push_back(static_cast<int>(levels[m].size()));
        levels[m].push_back(std::move(e));
      }
  }
  return levels;
}

// ---------------------------------------------------------------------------

CatalogEntry read_catalog_file(const std::string& path) {
  CatalogEntry e;
  e.path = path;
  e.name = std::filesystem::path(path).stem().string();
  std::ifstream in(path);
  if (!in) {
    e.error = "cannot open " + path;
    return e;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  auto split = [](std::string s) {
    std::vector<std::string> out;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '[' || c == ']' || c == ' '; }),
            s.end());
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) out.push_back(item);
    return out;
  };
  while (std::getline(lines, line)) {
    ++lineno;
    if (line.rfind("#@", 0) != 0) continue;
    std::istringstream ls(line.substr(2));
    std::string key, rest;
    ls >> key;
    std::getline(ls, rest);
    try {
      if (key == "order") {
        e.expected_order = BigInt(split(rest).at(0));
      } else if (key == "b0") {
        std::vector<BigInt> b;
        for (const auto& s : split(rest)) b.emplace_back(s);
        e.expected_b0 = std::move(b);
      } else if (key == "tags") {
        e.expected_tags = split(rest);
      } else {
        e.error = "line " + std::to_string(lineno) + ": unknown annotation '" + key + "'";
        return e;
      }
    } catch (const std::exception&) {
      e.error = "line " + std::to_string(lineno) + ": malformed annotation";
      return e;
    }
  }
  try {
    PcPresentation p = parse_presentation_text(text);
    const auto violations = p.consistency_check();
    if (!violations.empty()) {
      e.error = "inconsistent presentation: overlap " + violations.front().overlap + " gives " +
                p.to_string(violations.front().lhs) + " vs " + p.to_string(violations.front().rhs);
      return e;
    }
    e.name = p.name();
    e.presentation = std::move(p);
  } catch (const PresentationError& err) {
    e.error = err.what();
  }
  return e;
}

std::vector<CatalogEntry> read_catalog(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.is_regular_file() && f.path().extension() == ".pc") files.push_back(f.path().string());
  std::sort(files.begin(), files.end());
  std::vector<CatalogEntry> out;
  for (const auto& f : files) out.push_back(read_catalog_file(f));
  return out;
}

}  // namespace bogo
