#pragma once
// Fixed verification checklists: every commutator identity used in the
// exponent arguments for metabelian, exponent-4, 4-Engel and class-5 groups,
// checked in law closures of free nilpotent groups.

#include "bogo/varlaws.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bogo {

enum class SuiteCase { Metabelian, Exp4, Engel4, Class5 };
std::optional<SuiteCase> parse_suite_case(const std::string& s);
std::string suite_name(SuiteCase c);

enum class ItemStatus { Verified, NotReduced };

struct SuiteItem {
  std::string name;
  std::string context;              // closure the claims are checked in
  std::vector<std::string> claims;  // "lhs = rhs"
  ItemStatus status = ItemStatus::NotReduced;
  bool replayed = false;            // every certificate replayed with the collector
  std::string residual;             // first failing claim's residual
  std::vector<std::string> hypotheses;
  std::vector<std::string> notes;
  long long certificate_terms = 0;
  double seconds = 0;
};

struct ContextSummary {
  std::string name;
  int k = 0, c = 0;
  std::vector<std::string> laws;
  std::vector<std::string> relations;
  std::string strategy;
  int depth = 0;
  long long instances = 0, sifts = 0;
  int pivots = 0, free_rank = 0;
  std::string order;  // decimal, or "infinite"
  std::string scalar;
  bool budget_exhausted = false;
  double seconds = 0;
};

struct VerificationReport {
  std::string suite;
  int e = 0;
  bool vacuous = false;
  std::string note;
  std::vector<ContextSummary> contexts;
  std::vector<SuiteItem> items;
  double seconds = 0;

  int verified() const;
  bool all_verified() const;  // false for a vacuous suite
};

struct SuiteOptions {
  int depth = 0;  // 0: class bound of each context
  long long budget = 0;
  InstanceStrategy strategy = InstanceStrategy::WeightedSimplex;
  bool replay = true;
};

// e is the exponent parameter: metabelian uses exponent e itself, engel4 and
// class5 use exponent 2^e; exp4 ignores it.
VerificationReport verify_suite(SuiteCase which, int e, const SuiteOptions& opt = {});

std::string strategy_name(InstanceStrategy s);
std::optional<InstanceStrategy> parse_strategy(const std::string& s);

}  // namespace bogo
