#include "bogo/powerexp.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace bogo {

namespace {
using Rational = boost::multiprecision::cpp_rational;

// Solves sum_j b_j C(n_t, j) = y_t exactly (square system, Gauss-Jordan over Q).
std::vector<BigInt> solve_binomial(const std::vector<int>& ns, const std::vector<BigInt>& ys,
                                   int r) {
  std::vector<std::vector<Rational>> m(r, std::vector<Rational>(r + 1));
  for (int t = 0; t < r; ++t) {
    for (int j = 1; j <= r; ++j) m[t][j - 1] = Rational(binomial(ns[t], j));
    m[t][r] = Rational(ys[t]);
  }
  for (int col = 0; col < r; ++col) {
    int piv = col;
    while (piv < r && m[piv][col] == 0) ++piv;
    if (piv == r) throw std::runtime_error("binomial system is singular");
    std::swap(m[piv], m[col]);
    for (int row = 0; row < r; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational f = m[row][col] / m[col][col];
      for (int x = col; x <= r; ++x) m[row][x] -= f * m[col][x];
    }
  }
  std::vector<BigInt> b(r);
  for (int j = 0; j < r; ++j) {
    Rational v = m[j][r] / m[j][j];
    if (boost::multiprecision::denominator(v) != 1)
      throw std::runtime_error("non-integral expansion coefficient");
    b[j] = boost::multiprecision::numerator(v);
  }
  return b;
}
}  // namespace

BigInt ExpansionPolynomial::evaluate(const BigInt& n) const {
  BigInt v = 0;
  for (std::size_t j = 0; j < b.size(); ++j) v += b[j] * binomial(n, static_cast<int>(j) + 1);
  return v;
}

std::vector<ExpansionPolynomial> expansion_polynomials(const FreeNilpotentGroup& g, int first_n) {
  if (g.generator_count() != 2) throw std::invalid_argument("power expansion needs two generators");
  const int c = g.class_bound();
  const auto& basis = g.basis();
  const Syllables ab = g.mul({{0, BigInt(1)}}, {{1, BigInt(1)}});
  // powers[t] = (ab)^{first_n + t}
  std::vector<NormalWord> powers;
  Syllables cur = g.pow(ab, first_n);
  for (int t = 0; t < c; ++t) {
    powers.emplace_back(&g, cur);
    cur = g.mul(cur, ab);
  }
  std::vector<ExpansionPolynomial> out;
  for (int i = 0; i < basis.size(); ++i) {
    ExpansionPolynomial p;
    p.basis_index = i;
    p.commutator = basis.render(i);
    p.weight = basis.weight(i);
    const int r = p.weight;
    if (first_n == 1) {
      // C(n,j) = 0 for j > n: forward substitution.
      p.b.assign(r, 0);
      for (int n = 1; n <= r; ++n) {
        BigInt y = powers[n - 1].exponent(i);
        for (int j = 1; j < n; ++j) y -= p.b[j - 1] * binomial(n, j);
        p.b[n - 1] = y;  // C(n,n) = 1
      }
    } else {
      std::vector<int> ns;
      std::vector<BigInt> ys;
      for (int t = 0; t < r; ++t) {
        ns.push_back(first_n + t);
        ys.push_back(powers[t].exponent(i));
      }
      p.b = solve_binomial(ns, ys, r);
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ExpansionPolynomial> expansion_polynomials(int c) {
  if (c < 1 || c > 6) throw std::invalid_argument("expansion_polynomials: class bound must be 1..6");
  auto g = FreeNilpotentGroup::create(2, c);
  return expansion_polynomials(*g);
}

const std::vector<std::pair<std::string, std::vector<int>>>& table1_fixture() {
  static const std::vector<std::pair<std::string, std::vector<int>>> rows = {
      {"a", {1}},
      {"b", {1}},
      {"[b,a]", {0, 1}},
      {"[b,a,a]", {0, 0, 1}},
      {"[b,a,b]", {0, 1, 2}},
      {"[b,a,a,a]", {0, 0, 0, 1}},
      {"[b,a,a,b]", {0, 0, 2, 3}},
      {"[b,a,b,b]", {0, 0, 2, 3}},
      {"[b,a,a,[b,a]]", {0, 0, 1, 7, 6}},
      {"[b,a,b,[b,a]]", {0, 0, 6, 18, 12}},
      {"[b,a,a,a,a]", {0, 0, 0, 0, 1}},
      {"[b,a,a,a,b]", {0, 0, 0, 3, 4}},
      {"[b,a,a,b,b]", {0, 0, 1, 6, 6}},
      {"[b,a,b,b,b]", {0, 0, 0, 3, 4}},
      {"[b,a,b,[b,a,a]]", {0, 0, 4, 21, 36, 20}},
      {"[b,a,a,a,[b,a]]", {0, 0, 0, 3, 13, 10}},
      {"[b,a,a,b,[b,a]]", {0, 0, 2, 24, 52, 30}},
      {"[b,a,b,b,[b,a]]", {0, 0, 3, 27, 54, 30}},
      {"[b,a,a,a,a,a]", {0, 0, 0, 0, 0, 1}},
      {"[b,a,a,a,a,b]", {0, 0, 0, 0, 4, 5}},
      {"[b,a,a,a,b,b]", {0, 0, 0, 3, 12, 10}},
      {"[b,a,a,b,b,b]", {0, 0, 0, 3, 12, 10}},
      {"[b,a,b,b,b,b]", {0, 0, 0, 0, 4, 5}},
  };
  return rows;
}

MatchReport verify_table1(const FreeNilpotentGroup& g) {
  MatchReport rep;
  auto polys = expansion_polynomials(g);
  std::map<std::string, const ExpansionPolynomial*> by_name;
  for (const auto& p : polys) by_name[p.commutator] = &p;
  for (const auto& [name, bs] : table1_fixture()) {
    Table1Row row;
    row.commutator = name;
    for (int v : bs) row.expected.emplace_back(v);
    auto it = by_name.find(name);
    if (it != by_name.end()) row.computed = it->second->b;
    row.match = it != by_name.end() && row.computed == row.expected;
    if (row.match) ++rep.matched;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

MatchReport verify_table1() {
  auto g = FreeNilpotentGroup::create(2, 6);
  return verify_table1(*g);
}

}  // namespace bogo
