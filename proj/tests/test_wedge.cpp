#include "bogo/catalog.hpp"
#include "bogo/wedge.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace bogo;

namespace {

PcPresentation fixture(const std::string& name) {
  return read_catalog_file(std::string(BOGO_FIXTURES) + "/" + name).presentation.value();
}

oracle::Table table_of(const PcPresentation& p) {
  const auto t = cayley_table(p);
  return oracle::Table{t.n, t.mul};
}

std::vector<BigInt> big(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// All groups of order 2^0..2^4 and 3^0..3^3, one per isomorphism class.
std::vector<PcPresentation> small_groups() {
  std::vector<PcPresentation> out;
  for (auto [p, n] : {std::pair{2, 4}, std::pair{3, 3}})
    for (const auto& level : p_groups_up_to(p, n))
      for (const auto& g : level) out.push_back(g);
  return out;
}

}  // namespace

TEST_CASE("Schur multipliers of named groups match the bar-complex oracle") {
  struct Case {
    const char* file;
    oracle::Table table;
    std::vector<BigInt> expected;
  };
  const std::vector<Case> cases = {
      {"trivial.pc", oracle::cyclic_product({}), {}},
      {"cyclic4.pc", oracle::cyclic_product({4}), {}},
      {"cyclic4_single.pc", oracle::cyclic_product({4}), {}},
      {"elementary4.pc", oracle::cyclic_product({2, 2}), big({2})},
      {"c2xc4.pc", oracle::cyclic_product({2, 4}), big({2})},
      {"dihedral8.pc", oracle::dihedral(4), big({2})},
      {"quaternion8.pc", oracle::quaternion8(), {}},
  };
  for (const auto& c : cases) {
    INFO(c.file);
    const auto p = fixture(c.file);
    const auto m = schur_multiplier(p);
    CHECK(m.torsion == oracle::bar_h2(c.table).torsion);
    CHECK(m.torsion == c.expected);
    CHECK(m.free_rank == 0);
  }
}

TEST_CASE("tailed cover of a cyclic group reduces to a trivial multiplier") {
  const auto tc = tailed_cover(fixture("cyclic4_single.pc"));
  CHECK(tc.tails() == 1);
  CHECK(tc.cover.size() == 2);
  const auto inv = cokernel_invariants(tc.relations, tc.tails());
  CHECK(inv.torsion.empty());
  CHECK(inv.free_rank == 1);  // the tail of g1^4 survives as the free part of the cover
}

TEST_CASE("inconsistent or infinite presentations are rejected") {
  const auto bad = parse_presentation_text(
      "group x\npcgens 3\norder 1 2\norder 2 2\norder 3 2\npow 2 := g3^1\nconj 2 1 := g3^1\nend\n");
  CHECK_THROWS_AS(tailed_cover(bad), std::invalid_argument);
  CHECK_THROWS_AS(tailed_cover(PcPresentation({0}, "z")), std::invalid_argument);
}

TEST_CASE("commuting pairs") {
  const auto v4 = fixture("elementary4.pc");
  CHECK(commuting_pairs(v4).size() == 10);

  const auto d8 = fixture("dihedral8.pc");
  const auto pairs = commuting_pairs(d8);
  CHECK(pairs.size() == static_cast<std::size_t>(oracle::commuting_pairs(oracle::dihedral(4))));
  CHECK(pairs.size() == 24);
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (const auto& [a, b] : pairs) {
    REQUIRE(d8.multiply(a, b) == d8.multiply(b, a));
    const auto i = d8.index_of(a), j = d8.index_of(b);
    seen.insert({std::min(i, j), std::max(i, j)});
  }
  CHECK(seen.size() == pairs.size());
  const auto z = center(d8);
  for (const auto& c : d8.elements()) {
    if (!z.contains(c)) continue;
    for (const auto& g : d8.elements()) {
      const auto i = d8.index_of(c), j = d8.index_of(g);
      CHECK(seen.count({std::min(i, j), std::max(i, j)}) == 1);
    }
  }
}

TEST_CASE("elementary abelian of order 4: the multiplier dies in the CP cover") {
  const auto w = curly_wedge(fixture("elementary4.pc"));
  CHECK(w.multiplier.torsion == big({2}));
  CHECK(w.b0.torsion.empty());
  CHECK(w.crosscheck);
  CHECK(w.wedge_order == 1);
  CHECK(w.cp_cover.order() == 4);
}

TEST_CASE("dihedral and quaternion groups of order 8") {
  for (auto name : {"dihedral8.pc", "quaternion8.pc"}) {
    INFO(name);
    const auto g = fixture(name);
    const auto w = curly_wedge(g);
    CHECK(w.b0.torsion.empty());
    CHECK(w.crosscheck);
    CHECK(w.stem);
    CHECK(w.cp_lifts_commute);
    CHECK(w.cp_cover.order() == 8);
    CHECK(w.wedge_order == 2);
    CHECK(w.wedge_order == w.b0.order() * oracle::derived_order(table_of(g)));
    CHECK(w.kappa_identity);
  }
  const auto r = divisibility_report(fixture("dihedral8.pc"));
  CHECK(r.exp_g == 4);
  CHECK(r.exp_wedge == 2);
  CHECK(r.exp_b0 == 1);
  CHECK(r.wedge_divides);
  CHECK(r.b0_divides);
  CHECK(has(r.tags, "metabelian"));
  CHECK(has(r.tags, "class<=5"));
}

TEST_CASE("abelian groups have a trivial curly wedge") {
  for (auto name : {"trivial.pc", "cyclic4.pc", "elementary4.pc", "c2xc4.pc"}) {
    INFO(name);
    const auto w = curly_wedge(fixture(name));
    CHECK(w.wedge_order == 1);
    CHECK(w.exp_wedge == 1);
    CHECK(w.wedge_divides);
    CHECK(w.b0.torsion.empty());
  }
  CHECK(bogomolov(fixture("trivial.pc")).torsion.empty());
  CHECK(b0_crosscheck(fixture("trivial.pc")));
}

TEST_CASE("all small p-groups against the table oracles") {
  const auto groups = small_groups();
  REQUIRE(groups.size() == (1 + 1 + 2 + 5 + 14) + (1 + 1 + 2 + 5));
  for (const auto& g : groups) {
    INFO(presentation_to_text(g));
    const auto t = table_of(g);
    const auto w = curly_wedge(g);
    CHECK(w.multiplier.torsion == oracle::bar_h2(t).torsion);
    CHECK(w.b0.torsion == oracle::bar_h2(t, true).torsion);
    CHECK(w.b0.torsion.empty());
    CHECK(w.crosscheck);
    CHECK(w.stem);
    CHECK(w.cp_lifts_commute);
    CHECK(w.multiplier_free_rank_ok);
    CHECK(w.commuting_pairs == static_cast<std::size_t>(oracle::commuting_pairs(t)));
    CHECK(w.wedge_order == w.b0.order() * oracle::derived_order(t));
    CHECK(w.kappa_identity);
    CHECK(w.exp_g == oracle::exponent(t));
    CHECK(w.b0_divides);
    if (oracle::derived_order(t) == 1) CHECK(w.wedge_order == 1);
    if (!w.tags.empty()) CHECK(w.wedge_divides);
    // B0 is a quotient of M
    CHECK(w.multiplier.order() % w.b0.order() == 0);
  }
}

TEST_CASE("invariants text") {
  CHECK(invariants_text({}) == "[]");
  CHECK(invariants_text({big({2, 4}), 0}) == "[2,4]");
  CHECK(invariants_text({big({2}), 1}) == "[2] + Z^1");
}
