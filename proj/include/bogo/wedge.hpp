#pragma once
// Schur multiplier, Bogomolov multiplier and the curly exterior square of a
// finite p-group given by a consistent pc presentation.
//
// Pipeline: tailed cover (one central tail per relation, consistency gives the
// relations among tails) -> commuting pairs -> CP cover H -> [H,H].

#include "bogo/pcarith.hpp"
#include "bogo/smith.hpp"

#include <string>
#include <vector>

namespace bogo {

struct TailedPresentation {
  PcPresentation base;
  // Base generators followed by one infinite central tail per relation.
  PcPresentation cover;
  std::vector<std::string> tail_labels;  // "pow 1", "conj 3 1", ...
  BigMatrix relations;                   // rows: integer relations among the tails
  int tails() const { return static_cast<int>(tail_labels.size()); }
  std::vector<BigInt> tail_vector(const PcWord& cover_word) const;
  PcWord lift(const PcWord& base_word) const;  // same exponents, zero tails
};

TailedPresentation tailed_cover(const PcPresentation& g);
AbelianInvariants schur_multiplier(const PcPresentation& g);

// Invariants of G/[G,G] (for abelian G, of G itself).
AbelianInvariants abelian_invariants(const PcPresentation& g);

struct CommutingPair {
  PcWord a, b;
};
// Unordered commuting pairs {a,b} (a == b allowed).  Exhaustive up to
// `exhaustive_limit` elements; above it, one pair (class representative,
// centralizer generator) per conjugacy class, which generates the same
// commutator-lift subgroup.
std::vector<CommutingPair> commuting_pairs(const PcPresentation& g,
                                           std::int64_t exhaustive_limit = 1 << 10);

struct WedgeResult {
  std::string name;
  BigInt group_order;
  AbelianInvariants multiplier;
  AbelianInvariants b0;         // path (ii): M(G) modulo commuting-pair lift commutators
  AbelianInvariants b0_cover;   // path (i): central kernel of H inside [H,H]
  bool crosscheck = false;      // path (i) == path (ii)
  bool cp_lifts_commute = false;
  bool stem = false;            // kernel of H -> G lies in [H,H]
  bool multiplier_free_rank_ok = false;
  bool reduced_pairs = false;   // centralizer walk used instead of all pairs
  std::size_t commuting_pairs = 0;
  PcPresentation cp_cover;      // H
  PcPresentation curly_wedge;   // [H,H]
  BigInt wedge_order, derived_order;  // |[H,H]|, |[G,G]|
  bool kappa_identity = false;  // |G^G| == |B0| * |[G,G]|
  std::int64_t exp_g = 1, exp_wedge = 1, exp_b0 = 1;
  bool b0_divides = false, wedge_divides = false;
  std::vector<std::string> tags;  // "metabelian", "class<=5", "exponent4", "4-engel"
  double seconds = 0;
};

WedgeResult curly_wedge(const PcPresentation& g);
AbelianInvariants bogomolov(const PcPresentation& g);
bool b0_crosscheck(const PcPresentation& g);

struct DivisibilityReport {
  std::int64_t exp_g = 1, exp_wedge = 1, exp_b0 = 1;
  bool b0_divides = false, wedge_divides = false;
  std::vector<std::string> tags;
};
DivisibilityReport divisibility_report(const PcPresentation& g);

std::vector<std::string> hypothesis_tags(const PcPresentation& g);
std::string invariants_text(const AbelianInvariants& a);  // "[2,4]", "[]", "[2] + Z^1"

}  // namespace bogo
