#pragma once
// Small p-group catalog: enumeration by central extensions of order p,
// isomorphism testing on multiplication tables, and fixture files carrying
// "#@" expectation annotations.

#include "bogo/pcarith.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bogo {

// Exact isomorphism test for finite p-groups small enough for a table.
bool isomorphic(const PcPresentation& a, const PcPresentation& b);

// All consistent presentations obtained from `k` (relative orders p) by one
// new central generator of order p, one tail exponent per relation.
std::vector<PcPresentation> central_extensions(const PcPresentation& k, int p);

// One presentation per isomorphism class of groups of order p^n, built
// level by level from the classes of order p^(n-1).
std::vector<std::vector<PcPresentation>> p_groups_up_to(int p, int n);

struct CatalogEntry {
  std::string path;
  std::string name;
  std::optional<PcPresentation> presentation;
  std::string error;  // parse / consistency failure
  std::optional<BigInt> expected_order;
  std::optional<std::vector<BigInt>> expected_b0;
  std::optional<std::vector<std::string>> expected_tags;
};

// Reads one fixture: the pc grammar plus lines
//   #@ order <n>
//   #@ b0 [d1,d2,...]
//   #@ tags t1,t2,...
CatalogEntry read_catalog_file(const std::string& path);
// All *.pc files of a directory, sorted by file name.
std::vector<CatalogEntry> read_catalog(const std::string& dir);

}  // namespace bogo
