#pragma once
// Polycyclic presentations: collection from the left, consistency checks,
// induced sequences with certificates, quotients and small-group utilities.
//
// Generators are 0-based internally; the text format is 1-based (g1, g2, ...).

#include "bogo/bigint.hpp"
#include "bogo/smith.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bogo {

struct PcSyllable {
  int gen = 0;
  std::int64_t exp = 0;
  bool operator==(const PcSyllable&) const = default;
};
// An unreduced generator string g_{i1}^{a1} g_{i2}^{a2} ...
using PcString = std::vector<PcSyllable>;

// Normal form g_1^{e_1} ... g_n^{e_n}, 0 <= e_i < o_i for finite o_i.
struct PcWord {
  std::vector<std::int64_t> exps;
  bool operator==(const PcWord&) const = default;
  bool operator<(const PcWord& o) const { return exps < o.exps; }
  bool is_identity() const;
  int depth() const;  // first nonzero position, size() for the identity
  PcString syllables() const;
};

class CollectionBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PresentationError : public std::runtime_error {
 public:
  PresentationError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ConsistencyViolation {
  std::string overlap;  // e.g. "(g3 g2) g1"
  PcWord lhs, rhs;
};

class PcPresentation {
 public:
  static constexpr std::int64_t kDefaultStepBudget = 10'000'000;

  PcPresentation() = default;
  // relative_orders[i] == 0 marks an infinite generator.
  explicit PcPresentation(std::vector<std::int64_t> relative_orders, std::string name = "");

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  int size() const { return static_cast<int>(orders_.size()); }
  std::int64_t relative_order(int i) const { return orders_.at(i); }
  const std::vector<std::int64_t>& relative_orders() const { return orders_; }
  bool is_finite() const;

  // g_i^{o_i} = rhs (generators > i).  Default: identity.
  void set_power(int i, PcString rhs);
  // g_j^{g_i} = rhs for j > i (generators >= j).  Default: g_j.
  void set_conjugate(int j, int i, PcString rhs);
  const PcString& power(int i) const { return power_.at(i); }
  const PcString& conjugate(int j, int i) const { return conj_.at(j).at(i); }

  std::int64_t step_budget() const { return budget_; }
  void set_step_budget(std::int64_t b) { budget_ = b; }

  PcWord identity() const;
  PcWord generator(int i, std::int64_t e = 1) const;
  PcWord collect(const PcString& w) const;
  PcWord multiply(const PcWord& a, const PcWord& b) const;
  PcWord multiply(const PcWord& a, const PcString& b) const;
  PcWord inverse(const PcWord& a) const;
  PcWord power(const PcWord& a, std::int64_t n) const;
  PcWord conjugate(const PcWord& a, const PcWord& by) const;    // by^-1 a by
  PcWord commutator(const PcWord& a, const PcWord& b) const;    // a^-1 b^-1 a b

  // Only for finite presentations.
  BigInt order() const;
  std::int64_t element_order(const PcWord& a) const;
  std::vector<PcWord> elements() const;  // lexicographic in exponent vectors
  std::int64_t index_of(const PcWord& a) const;  // position in elements()
  PcWord element_at(std::int64_t index) const;

  std::vector<ConsistencyViolation> consistency_check() const;

  std::string to_string(const PcWord& w) const;

 private:
  struct Tables;
  const Tables& tables() const;
  void invalidate();
  void validate_index(int i) const;

  std::string name_;
  std::vector<std::int64_t> orders_;
  std::vector<PcString> power_;
  std::vector<std::vector<PcString>> conj_;  // conj_[j][i], i < j
  std::int64_t budget_ = kDefaultStepBudget;

  struct Lazy {
    std::once_flag once;
    std::shared_ptr<const Tables> tables;
  };
  mutable std::shared_ptr<Lazy> lazy_ = std::make_shared<Lazy>();
};

// --- text format -------------------------------------------------------------

PcPresentation parse_presentation_text(const std::string& text);
std::string presentation_to_text(const PcPresentation& p);
PcString parse_pc_string(const std::string& text, int n);  // "g1^2 g3^-1"
std::string pc_string_text(const PcString& w);

// --- subgroups ----------------------------------------------------------------

// A certificate is a DAG over the subgroup's original generators.
struct CertificateNode {
  enum class Kind { Generator, Product, Commutator, Conjugate } kind = Kind::Generator;
  int generator = -1;                                      // Generator
  std::vector<std::pair<int, std::int64_t>> factors;       // Product: node^exp ...
  int left = -1, right = -1;                               // Commutator [left,right]
  PcWord by;                                               // Conjugate: left^by
};

class Certificates {
 public:
  int generator(int i);
  int product(std::vector<std::pair<int, std::int64_t>> factors);
  int commutator(int a, int b);
  int conjugate(int a, PcWord by);
  const CertificateNode& node(int i) const { return nodes_.at(i); }
  int size() const { return static_cast<int>(nodes_.size()); }
  // Evaluates a node from the original generators.
  PcWord evaluate(const PcPresentation& p, const std::vector<PcWord>& gens, int node) const;

 private:
  std::vector<CertificateNode> nodes_;
};

struct MembershipResult {
  bool member = false;
  std::vector<std::int64_t> coefficients;  // w = prod pivot_k^{c_k} when member
  int certificate = -1;                    // node in the sequence's certificates
};

class InducedSequence {
 public:
  InducedSequence(const PcPresentation& p, std::vector<PcWord> gens, bool normal_closure = false);

  const PcPresentation& presentation() const { return *pres_; }
  const std::vector<PcWord>& generators() const { return gens_; }
  // Pivots in increasing depth; each is reduced against the later ones.
  const std::vector<PcWord>& pivots() const { return pivots_; }
  std::vector<int> depths() const;
  std::vector<std::int64_t> relative_orders() const;  // o_d / lead_d
  int certificate_of(int pivot) const { return pivot_cert_.at(pivot); }
  const Certificates& certificates() const { return certs_; }
  Certificates& certificates() { return certs_; }

  BigInt order() const;
  MembershipResult membership(const PcWord& w);
  // w = prod pivot_k^{c_k}, or nullopt when w is not in the subgroup.
  std::optional<std::vector<std::int64_t>> coefficients(const PcWord& w) const;
  bool contains(const PcWord& w) const;
  // Canonical coset representative of N w (only meaningful when normal).
  PcWord reduce(const PcWord& w) const;
  // Presentation on the pivots.
  PcPresentation subgroup_presentation(const std::string& name = "") const;

 private:
  void add(PcWord x, int node);
  void close_normal();
  void tail_reduce();

  std::shared_ptr<const PcPresentation> pres_;
  std::vector<PcWord> gens_;
  std::vector<std::optional<std::pair<PcWord, int>>> slot_;  // per depth
  std::vector<PcWord> pivots_;
  std::vector<int> pivot_cert_;
  Certificates certs_;
};

PcPresentation quotient(const PcPresentation& p, const std::vector<PcWord>& normal_gens);
std::int64_t exponent(const PcPresentation& p);

// Subgroup helpers built on InducedSequence.
InducedSequence derived_subgroup(const PcPresentation& p);
std::vector<InducedSequence> lower_central_series(const PcPresentation& p);
int nilpotency_class(const PcPresentation& p);
bool is_abelian(const PcPresentation& p);
InducedSequence center(const PcPresentation& p);

// Multiplication table of a finite presentation, elements indexed as in
// PcPresentation::elements().
struct CayleyTable {
  int n = 0;
  std::vector<int> mul;  // mul[a*n+b]
  std::vector<int> inv;
  int op(int a, int b) const { return mul[static_cast<std::size_t>(a) * n + b]; }
};
CayleyTable cayley_table(const PcPresentation& p, std::int64_t max_order = 1 << 12);

}  // namespace bogo
