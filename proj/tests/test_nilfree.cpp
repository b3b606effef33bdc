#include "bogo/magnus.hpp"
#include "bogo/nilfree.hpp"
#include "bogo/word_expr.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace bogo;

namespace {

// Integer unitriangular matrices: a faithful-enough target for words of
// class <= size-1, computed without any collection.
struct UMat {
  int n = 0;
  std::vector<BigInt> a;
  static UMat one(int n) {
    UMat m{n, std::vector<BigInt>(n * n, 0)};
    for (int i = 0; i < n; ++i) m.a[i * n + i] = 1;
    return m;
  }
  BigInt& at(int i, int j) { return a[i * n + j]; }
  const BigInt& at(int i, int j) const { return a[i * n + j]; }
  friend UMat operator*(const UMat& x, const UMat& y) {
    UMat r{x.n, std::vector<BigInt>(x.n * x.n, 0)};
    for (int i = 0; i < x.n; ++i)
      for (int k = i; k < x.n; ++k)
        if (x.at(i, k) != 0)
          for (int j = k; j < x.n; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
    return r;
  }
  UMat inverse() const {  // (1 + N)^-1 = sum (-N)^k
    UMat nil = *this;
    for (int i = 0; i < n; ++i) nil.at(i, i) = 0;
    UMat r = one(n), term = one(n);
    for (int k = 1; k < n; ++k) {
      term = term * nil;
      for (int i = 0; i < n * n; ++i) r.a[i] += (k % 2 ? -1 : 1) * term.a[i];
    }
    return r;
  }
  bool operator==(const UMat&) const = default;
};

UMat upow(const UMat& x, BigInt e) {
  UMat base = e < 0 ? x.inverse() : x, r = UMat::one(x.n);
  if (e < 0) e = -e;
  for (; e > 0; e >>= 1) {
    if ((e & 1) != 0) r = r * base;
    base = base * base;
  }
  return r;
}

UMat ucomm(const UMat& x, const UMat& y) { return x.inverse() * y.inverse() * x * y; }

struct MatrixImage {
  const FreeNilpotentGroup& g;
  std::vector<UMat> gens, basic;
  MatrixImage(const FreeNilpotentGroup& g_, std::mt19937_64& rng, int n) : g(g_) {
    std::uniform_int_distribution<int> d(-2, 2);
    for (int i = 0; i < g.generator_count(); ++i) {
      UMat m = UMat::one(n);
      for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) m.at(r, c) = d(rng);
      gens.push_back(m);
    }
    const auto& b = g.basis();
    for (int i = 0; i < b.size(); ++i)
      basic.push_back(b[i].left < 0 ? gens[b[i].expr.generator] : ucomm(basic[b[i].left], basic[b[i].right]));
  }
  UMat of(const NormalWord& w) const {
    UMat r = UMat::one(gens[0].n);
    for (const auto& [i, e] : w.syllables()) r = r * upow(basic[i], e);
    return r;
  }
};

NormalWord random_word(const FreeNilpotentGroup& g, std::mt19937_64& rng, int syllables, int range) {
  std::uniform_int_distribution<int> idx(0, g.basis().size() - 1), ex(-range, range);
  Syllables s;
  for (int i = 0; i < syllables; ++i) {
    int e = ex(rng);
    if (e != 0) s.push_back({idx(rng), BigInt(e)});
  }
  return g.word(s);
}

}  // namespace

TEST_CASE("small products in normal form") {
  auto g2 = FreeNilpotentGroup::create(2, 2);
  const auto a = g2->generator(0), b = g2->generator(1);
  CHECK(multiply(a, b).str() == "a b");
  CHECK(multiply(b, a).str() == "a b [b,a]");
  CHECK(commutator(a, b) == invert(g2->basic(2)));

  auto g3 = FreeNilpotentGroup::create(2, 3);
  const auto a3 = g3->generator(0), b3 = g3->generator(1), ab = multiply(a3, b3);
  CHECK(multiply(ab, ab).str() == "a^2 b^2 [b,a] [b,a,b]");
  CHECK(power(ab, 3).str() == "a^3 b^3 [b,a]^3 [b,a,a] [b,a,b]^5");
  CHECK(power(ab, 0).is_identity());
  CHECK(commutator(ab, ab).is_identity());

  auto g4 = FreeNilpotentGroup::create(2, 4);
  const auto& t = g4->basis();
  const auto baa = g4->basic(*t.find("[b,a,a]"));
  CHECK(commutator(baa, g4->generator(1)) == g4->basic(*t.find("[b,a,a,b]")));
}

TEST_CASE("Engel word at class 5 equals the iterated commutator") {
  auto g = FreeNilpotentGroup::create(2, 5);
  const auto a = g->generator(0), b = g->generator(1);
  const auto v = evaluate_word(parse_word("[x1,x2,x2,x2,x2]", {"x1", "x2"}), {a, b});
  CHECK(v == commutator(commutator(commutator(commutator(a, b), b), b), b));
  CHECK(evaluate_word(parse_word("x1", {"x1"}), {a}) == a);
  CHECK(evaluate_word(parse_word("[x1,x2]", {"x1", "x2"}), {a, b}) == commutator(a, b));
}

TEST_CASE("collected words map to the same matrices as the raw products") {
  std::mt19937_64 rng(11);
  for (auto [k, c] : {std::pair{2, 6}, std::pair{3, 5}, std::pair{2, 7}}) {
    auto g = FreeNilpotentGroup::create(k, c);
    MatrixImage img(*g, rng, c + 1);
    for (int trial = 0; trial < 60; ++trial) {
      const auto u = random_word(*g, rng, 4, 3), v = random_word(*g, rng, 4, 3);
      INFO("k=" << k << " c=" << c << " u=" << u.str() << " v=" << v.str());
      CHECK(img.of(multiply(u, v)) == img.of(u) * img.of(v));
      CHECK(img.of(commutator(u, v)) == ucomm(img.of(u), img.of(v)));
      CHECK(img.of(power(u, -3)) == upow(img.of(u), -3));
    }
  }
}

TEST_CASE("associativity and inverses on random triples") {
  std::mt19937_64 rng(5);
  for (auto [k, c] : {std::pair{2, 6}, std::pair{3, 6}, std::pair{3, 4}}) {
    auto g = FreeNilpotentGroup::create(k, c);
    for (int trial = 0; trial < 1000 / 3; ++trial) {
      const auto u = random_word(*g, rng, 5, 4), v = random_word(*g, rng, 5, 4), w = random_word(*g, rng, 5, 4);
      REQUIRE(multiply(multiply(u, v), w) == multiply(u, multiply(v, w)));
      REQUIRE(multiply(power(u, -1), u).is_identity());
      REQUIRE(multiply(u, invert(u)).is_identity());
    }
  }
}

TEST_CASE("power equals repeated multiplication") {
  std::mt19937_64 rng(7);
  auto g = FreeNilpotentGroup::create(3, 5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_word(*g, rng, 4, 3);
    NormalWord acc = g->identity();
    for (int n = 0; n <= 12; ++n) {
      REQUIRE(power(u, n) == acc);
      acc = multiply(acc, u);
    }
  }
}

TEST_CASE("letter collectors agree with the syllable collector") {
  std::mt19937_64 rng(3);
  auto g = FreeNilpotentGroup::create(2, 5);
  std::uniform_int_distribution<int> gen(0, 1), sign(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    Letters w;
    NormalWord direct = g->identity();
    for (int i = 0; i < 10; ++i) {
      const int x = gen(rng), s = sign(rng) ? 1 : -1;
      w.push_back({x, s});
      direct = multiply(direct, power(g->generator(x), s));
    }
    CHECK(collect_letters(*g, w, CollectionStrategy::LeftmostUncollected) == direct);
    CHECK(collect_letters(*g, w, CollectionStrategy::DeepestFirst) == direct);
  }
}

TEST_CASE("structure constants beyond the class are trivial") {
  auto g = FreeNilpotentGroup::create(2, 4);
  const auto& t = g->basis();
  for (int j = 0; j < t.size(); ++j)
    for (int i = 0; i < j; ++i) {
      const auto s = g->structure_constant(j, i);
      if (t.weight(i) + t.weight(j) > 4) CHECK(s.is_identity());
      else CHECK(s.depth() >= t.weight(i) + t.weight(j));
    }
}

TEST_CASE("Magnus images are multiplicative") {
  std::mt19937_64 rng(9);
  auto g = FreeNilpotentGroup::create(3, 5);
  MagnusBasis m(g);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = random_word(*g, rng, 4, 3), v = random_word(*g, rng, 4, 3);
    const auto mu = m.from_word<BigInt>(u), mv = m.from_word<BigInt>(v);
    CHECK(m.from_word<BigInt>(multiply(u, v)) == mul(mu, mv));
    CHECK(m.to_word(mul(mu, mv)) == multiply(u, v));
    CHECK(m.from_word<std::int64_t>(u).coeffs().cast<BigInt>() == mu.coeffs());
  }
}

TEST_CASE("mixing groups is rejected") {
  auto g = FreeNilpotentGroup::create(2, 3), h = FreeNilpotentGroup::create(2, 3);
  CHECK_THROWS_AS(multiply(g->generator(0), h->generator(0)), std::invalid_argument);
}
