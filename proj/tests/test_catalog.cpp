#include "bogo/catalog.hpp"
#include "bogo/wedge.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <map>

using namespace bogo;

namespace {
std::string fixture_path(const std::string& name) { return std::string(BOGO_FIXTURES) + "/" + name; }
PcPresentation fixture(const std::string& name) { return read_catalog_file(fixture_path(name)).presentation.value(); }
}  // namespace

TEST_CASE("numbers of p-groups of small order") {
  const auto two = p_groups_up_to(2, 5);
  std::vector<std::size_t> counts;
  for (const auto& level : two) counts.push_back(level.size());
  CHECK(counts == std::vector<std::size_t>{1, 1, 2, 5, 14, 51});

  const auto three = p_groups_up_to(3, 3);
  CHECK(three.back().size() == 5);
  CHECK(p_groups_up_to(5, 2).back().size() == 2);
  for (const auto& level : two)
    for (const auto& g : level) REQUIRE(g.consistency_check().empty());
}

TEST_CASE("isomorphism test") {
  CHECK(isomorphic(fixture("cyclic4.pc"), fixture("cyclic4_single.pc")));
  CHECK_FALSE(isomorphic(fixture("cyclic4.pc"), fixture("elementary4.pc")));
  CHECK_FALSE(isomorphic(fixture("dihedral8.pc"), fixture("quaternion8.pc")));
  CHECK_FALSE(isomorphic(fixture("dihedral8.pc"), fixture("c2xc4.pc")));
  CHECK(isomorphic(fixture("dihedral8.pc"), fixture("dihedral8.pc")));

  // D8 with the other reflection as first generator
  auto d = fixture("dihedral8.pc");
  auto e = parse_presentation_text(
      "group d8b\npcgens 3\norder 1 2\norder 2 2\norder 3 2\npow 1 := g3^1\npow 2 := g3^1\n"
      "conj 2 1 := g2^1 g3^1\nend\n");
  CHECK_FALSE(isomorphic(d, e));  // that one is Q8
  auto f = parse_presentation_text(
      "group d8c\npcgens 3\norder 1 2\norder 2 2\norder 3 2\npow 1 := g3^1\nconj 2 1 := g2^1 g3^1\nend\n");
  CHECK(isomorphic(d, f));  // g1 of order 4, g2 a reflection
}

TEST_CASE("central extensions of C2") {
  PcPresentation c2({2}, "c2");
  const auto ext = central_extensions(c2, 2);
  REQUIRE(ext.size() == 2);  // tail 0 and tail 1 on g1^2
  std::map<bool, int> cyclic;
  for (const auto& g : ext) {
    CHECK(g.order() == 4);
    ++cyclic[exponent(g) == 4];
  }
  CHECK(cyclic[true] == 1);
  CHECK(cyclic[false] == 1);
}

TEST_CASE("fixture annotations") {
  const auto e = read_catalog_file(fixture_path("dihedral8.pc"));
  REQUIRE(e.presentation);
  CHECK(e.error.empty());
  CHECK(e.name == "dihedral8");
  CHECK(e.expected_order == BigInt(8));
  REQUIRE(e.expected_b0);
  CHECK(e.expected_b0->empty());
  REQUIRE(e.expected_tags);
  CHECK(*e.expected_tags == hypothesis_tags(*e.presentation));

  const auto bad = read_catalog_file(fixture_path("inconsistent.pc"));
  CHECK_FALSE(bad.presentation);
  CHECK(bad.error.find("inconsistent presentation") != std::string::npos);
  const auto syn = read_catalog_file(fixture_path("bad_conj.pc"));
  CHECK_FALSE(syn.presentation);
  CHECK(syn.error.find("line 5") != std::string::npos);
  const auto missing = read_catalog_file(fixture_path("no_such_file.pc"));
  CHECK_FALSE(missing.presentation);
  CHECK_FALSE(missing.error.empty());
}

TEST_CASE("bundled catalog: every entry parses, is consistent and has its annotated order") {
  const auto entries = read_catalog(BOGO_CATALOG);
  std::map<BigInt, int> per_order;
  for (const auto& e : entries) {
    INFO(e.path << ": " << e.error);
    REQUIRE(e.presentation);
    CHECK(e.presentation->consistency_check().empty());
    REQUIRE(e.expected_order);
    CHECK(e.presentation->order() == *e.expected_order);
    CHECK(e.expected_b0);
    ++per_order[*e.expected_order];
  }
  CHECK(per_order[1] == 1);
  CHECK(per_order[2] == 1);
  CHECK(per_order[4] == 2);
  CHECK(per_order[8] == 5);
  CHECK(per_order[16] == 14);
  CHECK(per_order[32] == 51);
  CHECK(per_order[64] == 267);
  CHECK(per_order[27] == 5);
  CHECK(per_order[25] == 2);
  CHECK(per_order[49] == 2);

  // file names are unique and sorted
  for (std::size_t i = 1; i < entries.size(); ++i) CHECK(entries[i - 1].path < entries[i].path);
}

TEST_CASE("isomorphism classes in the bundled catalog are distinct") {
  const auto entries = read_catalog(BOGO_CATALOG);
  std::map<BigInt, std::vector<const PcPresentation*>> by_order;
  for (const auto& e : entries)
    if (e.presentation && e.presentation->order() <= 16) by_order[e.presentation->order()].push_back(&*e.presentation);
  for (const auto& [n, gs] : by_order)
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = i + 1; j < gs.size(); ++j) CHECK_FALSE(isomorphic(*gs[i], *gs[j]));
}
