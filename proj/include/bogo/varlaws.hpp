#pragma once
// Quotients of a free nilpotent group by laws.
//
// A closure is the normal subgroup N of F(k,c) generated by law instances
// (plus optional adjoined relations), kept as an echelon of pivots over the
// Hall-basis coordinates, one pivot per leading basis position.  Arithmetic
// runs in the Magnus embedding; every pivot carries a certificate node
// recording how it was obtained, and certificates are replayed with the
// collector so that membership claims never rest on the Magnus engine alone.
//
// Instances: with the weighted-simplex strategy each variable is replaced by
// u = prod c_i^{t_i}, t >= 0, over all tuples with sum of wt(c_i) t_i <= depth.
// Every Hall coordinate of w(u_1..u_m) is an integer-valued polynomial in the
// t's of weighted degree <= its weight, and the binomial basis is
// unitriangular on the simplex, so at depth = c these instances generate the
// whole verbal subgroup modulo gamma_{c+1}.

#include "bogo/bigint.hpp"
#include "bogo/nilfree.hpp"
#include "bogo/word_expr.hpp"

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bogo {

struct Law {
  std::string name;
  std::string text;  // source form, variables x1, x2, ...
  Expr expression;
  int arity = 0;
};

// Parses a law written in variables x1..x9 (or x,y,z,w).
Law make_law(const std::string& name, const std::string& text);

enum class InstanceStrategy {
  WeightedSimplex,  // all t >= 0 with weighted size <= depth (default)
  BasicPairs,       // values c_i^{+-1} and c_i^{+-1} c_j^{+-1}, total weight <= depth
  RandomWords,      // seeded random words in the generators, lengths 1..depth
  Explicit,         // ClosureOptions::tuples, supplied by the caller
};

struct AdjoinedRelation {
  std::string name;
  NormalWord value;          // asserted to be trivial
  bool assumed = true;       // true: imposed hypothesis, false: previously verified
};

struct ClosureOptions {
  int depth = 0;                          // 0 means the class bound
  InstanceStrategy strategy = InstanceStrategy::WeightedSimplex;
  long long budget = 0;                   // max sift operations, 0 = unlimited
  int samples = 2000;                     // RandomWords: tuples per law
  std::uint64_t seed = 1;                 // RandomWords
  std::vector<std::vector<Syllables>> tuples;  // Explicit: used for every law of matching arity
  std::vector<AdjoinedRelation> relations;
  // Replace each x^{p} in N by x (layer-wise p-torsion killing): used for
  // statements about groups without elements of order p.
  std::optional<int> kill_torsion_prime;
};

struct CertificateTerm {
  int node = -1;
  BigInt exponent;
};

struct CheckResult {
  bool member = false;
  NormalWord target;
  NormalWord residual;                    // partially sifted element when not a member
  std::vector<CertificateTerm> certificate;  // target = prod node^exponent, in order
};

struct ClosureStats {
  long long instances = 0;
  long long sifts = 0;
  long long pivots_stored = 0;
  int pivots = 0;
  bool budget_exhausted = false;
  std::string scalar = "int64";  // widest scalar the build needed: int64, int128, bigint
  double seconds = 0;
};

class Closure {
 public:
  Closure(FreeNilpotentPtr group, std::vector<Law> laws, ClosureOptions options);
  ~Closure();
  Closure(Closure&&) noexcept;
  Closure& operator=(Closure&&) noexcept;

  const FreeNilpotentGroup& group() const;
  const std::vector<Law>& laws() const;
  const ClosureOptions& options() const;
  const ClosureStats& stats() const;

  // |F(k,c)/N|, or nullopt if infinite.
  std::optional<BigInt> quotient_order() const;
  // Number of basis positions without a pivot (free rank of the quotient).
  int free_rank() const;
  // Leading coefficient of the pivot at a basis position (0 if none).
  BigInt pivot_lead(int basis_index) const;

  CheckResult check(const NormalWord& w) const;
  // Replays the certificate with the collector; true iff it reproduces the target.
  bool replay(const CheckResult& r) const;
  int certificate_nodes() const;
  // Hypotheses the certificate rests on: assumed adjoined relations and
  // torsion kills ("no elements of order p").  Empty means law instances only.
  std::vector<std::string> hypotheses(const CheckResult& r) const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

// Builds the closure; see ClosureOptions.
Closure law_closure(FreeNilpotentPtr group, std::vector<Law> laws, ClosureOptions options = {});

// Enumerates instance substitution tuples for a law of the given arity.
std::vector<std::vector<Syllables>> instance_tuples(const FreeNilpotentGroup& g, int arity,
                                                    int depth, InstanceStrategy strategy,
                                                    int samples = 2000, std::uint64_t seed = 1);

}  // namespace bogo
