#include "bogo/catalog.hpp"
#include "bogo/pcarith.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

using namespace bogo;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream f(std::string(BOGO_FIXTURES) + "/" + name);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}
PcPresentation fixture(const std::string& name) { return parse_presentation_text(slurp(name)); }

oracle::Table table_of(const PcPresentation& p) {
  const auto t = cayley_table(p);
  return oracle::Table{t.n, t.mul};
}

int parse_error_line(const std::string& text) {
  try {
    parse_presentation_text(text);
  } catch (const PresentationError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("cyclic group of order 4") {
  for (auto name : {"cyclic4.pc", "cyclic4_single.pc"}) {
    const auto p = fixture(name);
    CHECK(p.order() == 4);
    CHECK(p.consistency_check().empty());
    const auto g = p.collect({{0, 1}});
    CHECK(p.power(g, 6) == p.power(g, 2));
    CHECK(p.element_order(g) == 4);
  }
}

TEST_CASE("dihedral group against the permutation oracle") {
  const auto p = fixture("dihedral8.pc");
  REQUIRE(p.consistency_check().empty());
  CHECK(p.order() == 8);
  const auto s = p.generator(0), r = p.generator(1);
  const auto sr = p.multiply(s, r);
  CHECK(p.multiply(sr, sr) == p.identity());
  CHECK(p.element_order(r) == 4);
  CHECK(p.conjugate(r, s) == p.inverse(r));
  const auto mine = table_of(p), ref = oracle::dihedral(4);
  CHECK(oracle::order_statistics(mine) == oracle::order_statistics(ref));
  CHECK(oracle::center_order(mine) == oracle::center_order(ref));
  CHECK(oracle::commuting_pairs(mine) == oracle::commuting_pairs(ref));
  CHECK(oracle::derived_order(mine) == 2);
}

TEST_CASE("quaternion group against the quaternion oracle") {
  const auto p = fixture("quaternion8.pc");
  REQUIRE(p.consistency_check().empty());
  const auto i = p.generator(0), j = p.generator(1);
  const auto c = p.commutator(i, j);
  CHECK(c == p.generator(2));  // -1, the central square
  CHECK(p.multiply(i, i) == c);
  const auto mine = table_of(p), ref = oracle::quaternion8();
  CHECK(oracle::order_statistics(mine) == oracle::order_statistics(ref));
  CHECK(exponent(p) == oracle::exponent(ref));
  CHECK(exponent(p) == 4);
}

TEST_CASE("consistency check") {
  CHECK(fixture("dihedral8.pc").consistency_check().empty());
  CHECK(fixture("trivial.pc").consistency_check().empty());
  CHECK(fixture("trivial.pc").order() == 1);
  const auto bad = fixture("inconsistent.pc").consistency_check();
  REQUIRE_FALSE(bad.empty());
  CHECK_FALSE(bad.front().overlap.empty());
  CHECK(bad.front().lhs != bad.front().rhs);

  // r^s = r instead of r^-1 is a consistent presentation of C2 x C4
  auto p = fixture("dihedral8.pc");
  p.set_conjugate(1, 0, {{1, 1}});
  CHECK(p.consistency_check().empty());
  CHECK(is_abelian(p));
  CHECK(exponent(p) == 4);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(fixture("bad_conj.pc"), PresentationError);
  CHECK(parse_error_line(slurp("bad_conj.pc")) == 5);
  CHECK(parse_error_line(slurp("bad_order.pc")) == 3);
  CHECK(parse_error_line(slurp("missing_end.pc")) > 0);
  CHECK(parse_error_line("group x\npcgens 1\norder 1 2\npow 1 := g1^1\nend\n") == 4);
  CHECK(parse_error_line("group x\npcgens 1\norder 1 2\norder 1 2\nend\n") == 4);
  CHECK(parse_error_line("group x\npcgens 2\norder 1 2\norder 2 2\nfoo\nend\n") == 5);
}

TEST_CASE("serialization round-trips") {
  for (auto name : {"cyclic4.pc", "dihedral8.pc", "quaternion8.pc", "c2xc4.pc", "trivial.pc"}) {
    const auto p = fixture(name);
    const auto text = presentation_to_text(p);
    const auto q = parse_presentation_text(text);
    CHECK(presentation_to_text(q) == text);
    CHECK(q.name() == p.name());
    CHECK(q.relative_orders() == p.relative_orders());
    for (int i = 0; i < p.size(); ++i) {
      CHECK(q.power(i) == p.power(i));
      for (int j = i + 1; j < p.size(); ++j) CHECK(q.conjugate(j, i) == p.conjugate(j, i));
    }
  }
  CHECK(pc_string_text(parse_pc_string("g1^2 g3^-1", 3)) == "g1^2 g3^-1");
}

TEST_CASE("subgroup membership and certificates") {
  const auto c4 = fixture("cyclic4_single.pc");
  InducedSequence sq(c4, {c4.generator(0, 2)});
  CHECK(sq.contains(c4.generator(0, 2)));
  CHECK_FALSE(sq.contains(c4.generator(0, 1)));
  CHECK(sq.order() == 2);

  InducedSequence none(c4, {});
  CHECK(none.contains(c4.identity()));
  CHECK_FALSE(none.contains(c4.generator(0)));
  CHECK(none.order() == 1);

  const auto d8 = fixture("dihedral8.pc");
  auto d = derived_subgroup(d8);
  const auto r = d8.generator(1);
  CHECK(d.contains(d8.power(r, 2)));
  CHECK(d.order() == oracle::derived_order(table_of(d8)));

  std::mt19937_64 rng(1);
  for (auto name : {"dihedral8.pc", "quaternion8.pc", "c2xc4.pc"}) {
    const auto p = fixture(name);
    const auto all = p.elements();
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<PcWord> gens = {all[pick(rng)], all[pick(rng)]};
      for (bool normal : {false, true}) {
        InducedSequence s(p, gens, normal);
        for (const auto& w : all) {
          auto m = s.membership(w);
          REQUIRE(m.member == s.contains(w));
          if (m.member) REQUIRE(s.certificates().evaluate(p, gens, m.certificate) == w);
        }
        for (int k = 0; k < static_cast<int>(s.pivots().size()); ++k)
          REQUIRE(s.certificates().evaluate(p, gens, s.certificate_of(k)) == s.pivots()[k]);
      }
    }
  }
}

TEST_CASE("quotients") {
  const auto d8 = fixture("dihedral8.pc");
  const auto r2 = d8.power(d8.generator(1), 2);
  const auto q = quotient(d8, {r2});
  CHECK(q.order() == 4);
  CHECK(is_abelian(q));
  CHECK(exponent(q) == 2);
  CHECK(quotient(d8, d8.elements()).order() == 1);

  // |G/N| |N| = |G| for normal closures of random elements
  std::mt19937_64 rng(2);
  for (auto name : {"dihedral8.pc", "quaternion8.pc", "c2xc4.pc"}) {
    const auto p = fixture(name);
    const auto all = p.elements();
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = all[pick(rng)];
      InducedSequence n(p, {x}, true);
      CHECK(quotient(p, {x}).order() * n.order() == p.order());
    }
  }
}

TEST_CASE("series, centre and class") {
  const auto d8 = fixture("dihedral8.pc");
  CHECK(nilpotency_class(d8) == 2);
  CHECK(center(d8).order() == oracle::center_order(table_of(d8)));
  CHECK(nilpotency_class(fixture("c2xc4.pc")) == 1);
  CHECK(nilpotency_class(fixture("trivial.pc")) == 0);
  CHECK_FALSE(is_abelian(fixture("quaternion8.pc")));
}

TEST_CASE("infinite generators") {
  // infinite dihedral group: t^s = t^-1, t infinite
  PcPresentation p({2, 0}, "dinf");
  p.set_conjugate(1, 0, {{1, -1}});
  CHECK(p.consistency_check().empty());
  CHECK_FALSE(p.is_finite());
  const auto s = p.generator(0), t = p.generator(1);
  CHECK(p.multiply(p.multiply(s, t), p.multiply(s, t)) == p.identity());
  CHECK(p.power(t, -7).exps[1] == -7);

  // Heisenberg group over Z with an infinite central generator
  PcPresentation h({0, 0, 0}, "heis");
  h.set_conjugate(1, 0, {{1, 1}, {2, 1}});
  CHECK(h.consistency_check().empty());
  const auto x = h.generator(0), y = h.generator(1);
  CHECK(h.commutator(y, x) == h.generator(2));
  CHECK(h.multiply(h.inverse(x), h.multiply(y, x)) == h.multiply(y, h.generator(2)));
  const auto w = h.power(h.multiply(x, y), 5);
  CHECK(w.exps == std::vector<std::int64_t>{5, 5, 10});  // (xy)^n = x^n y^n [y,x]^C(n,2)
}

TEST_CASE("associativity on catalog groups") {
  std::mt19937_64 rng(4);
  const auto entries = read_catalog(BOGO_CATALOG);
  REQUIRE(entries.size() > 50);
  int tested = 0;
  for (const auto& e : entries) {
    REQUIRE(e.presentation);
    const auto& p = *e.presentation;
    if (p.order() > 64) continue;
    const auto n = static_cast<std::int64_t>(p.order());
    std::uniform_int_distribution<std::int64_t> pick(0, n - 1);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = p.element_at(pick(rng)), b = p.element_at(pick(rng)), c = p.element_at(pick(rng));
      REQUIRE(p.multiply(p.multiply(a, b), c) == p.multiply(a, p.multiply(b, c)));
      REQUIRE(p.multiply(a, p.inverse(a)) == p.identity());
      REQUIRE(p.index_of(p.element_at(p.index_of(a))) == p.index_of(a));
    }
    ++tested;
  }
  CHECK(tested == static_cast<int>(entries.size()));
}

TEST_CASE("step budget") {
  auto p = fixture("dihedral8.pc");
  p.set_step_budget(2);
  CHECK_THROWS_AS(p.power(p.multiply(p.generator(1), p.generator(0)), 7), CollectionBudgetExceeded);
}
