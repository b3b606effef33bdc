#pragma once
// Free nilpotent group F(k,c) of class c on k generators.  Elements are
// collected words c_1^{n_1} ... c_t^{n_t} over the Hall basis with
// arbitrary-precision exponents.
//
// Multiplication is collection from the left.  For every pair j > i with
// wt(c_j) + wt(c_i) <= c the context precomputes the conjugation polynomial
//   (c_j^e)^(c_i^s) = prod_r c_r^{Y_r(e,s)},
// each Y_r an integer-valued polynomial stored in the binomial basis
// C(e,a) C(s,b); it is interpolated once from small exact values and then
// evaluated at arbitrary (possibly negative) e, s.

#include "bogo/bigint.hpp"
#include "bogo/hallbasis.hpp"
#include "bogo/word_expr.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bogo {

class FreeNilpotentGroup;

using Syllable = std::pair<int, BigInt>;
using Syllables = std::vector<Syllable>;  // strictly increasing basis indices, no zero exponents

class NormalWord {
 public:
  NormalWord() = default;
  NormalWord(const FreeNilpotentGroup* ctx, Syllables s) : ctx_(ctx), syl_(std::move(s)) {}

  const FreeNilpotentGroup* context() const { return ctx_; }
  const Syllables& syllables() const { return syl_; }
  BigInt exponent(int i) const;
  bool is_identity() const { return syl_.empty(); }
  // Dense exponent vector of length basis().size().
  std::vector<BigInt> exponents() const;
  // Smallest weight carrying a nonzero exponent (class+1 for the identity).
  int depth() const;

  // "a^2 b^2 [b,a] [b,a,b]"; the identity renders as "1".
  std::string str() const;

  friend bool operator==(const NormalWord& x, const NormalWord& y) {
    return x.ctx_ == y.ctx_ && x.syl_ == y.syl_;
  }

 private:
  const FreeNilpotentGroup* ctx_ = nullptr;
  Syllables syl_;
};

struct FreeNilpotentOptions {
  // Test hook: multiply the structure constant [c_j, c_i] (j > i) by an extra
  // factor of the first basis element of the same weight.
  std::optional<std::pair<int, int>> perturb;
};

class FreeNilpotentGroup {
 public:
  static std::shared_ptr<const FreeNilpotentGroup> create(int k, int c,
                                                          FreeNilpotentOptions opt = {});

  int generator_count() const { return basis_.generator_count(); }
  int class_bound() const { return basis_.class_bound(); }
  const BasisTable& basis() const { return basis_; }

  NormalWord identity() const { return NormalWord(this, {}); }
  NormalWord generator(int g) const;
  NormalWord basic(int i, BigInt e = 1) const;
  NormalWord from_exponents(const std::vector<BigInt>& e) const;
  // Builds a normal word from syllables in any order (they are multiplied).
  NormalWord word(const Syllables& s) const;

  // Structure constant [c_j, c_i] for j > i.
  NormalWord structure_constant(int j, int i) const;

  // Raw syllable arithmetic (all inputs must be collected words).
  Syllables mul(const Syllables& u, const Syllables& v) const;
  Syllables inv(const Syllables& u) const;
  Syllables pow(const Syllables& u, const BigInt& n) const;
  Syllables comm(const Syllables& u, const Syllables& v) const;
  // r <- r * c_i^s, in place.
  void mul_basic(Syllables& r, int i, const BigInt& s) const;
  // (c_j^e)^(c_i^s) for j > i.
  Syllables conj_power(int j, const BigInt& e, int i, const BigInt& s) const;

  struct Stats {
    int tables = 0;
    long long interpolation_points = 0;
  };
  const Stats& stats() const { return stats_; }

 private:
  FreeNilpotentGroup(int k, int c, FreeNilpotentOptions opt);
  void build(const FreeNilpotentOptions& opt);
  Syllables conj_once(const Syllables& u, int i) const;

  struct Poly {
    int r = 0;  // output coordinate
    std::vector<std::tuple<int, int, BigInt>> terms;  // coef * C(e,a) * C(s,b)
  };
  struct ConjTable {
    int max_a = 0, max_b = 0;
    std::vector<Poly> coords;  // coordinates other than j itself
  };
  int slot(int j, int i) const { return slot_[static_cast<std::size_t>(j) * basis_.size() + i]; }

  BasisTable basis_;
  std::vector<int> slot_;
  std::vector<ConjTable> tables_;
  std::vector<Syllables> constants_;  // indexed like tables_
  Stats stats_;
};

using FreeNilpotentPtr = std::shared_ptr<const FreeNilpotentGroup>;

// Element-level API.  All throw std::invalid_argument on context mismatch.
NormalWord multiply(const NormalWord& u, const NormalWord& v);
NormalWord invert(const NormalWord& u);
NormalWord power(const NormalWord& u, const BigInt& n);
NormalWord commutator(const NormalWord& u, const NormalWord& v);
NormalWord evaluate_word(const Expr& e, const std::vector<NormalWord>& assignment);

// Group-arithmetic adaptor for the generic expression evaluator.
struct NormalWordOps {
  using Elem = NormalWord;
  const FreeNilpotentGroup* ctx;
  Elem identity() const { return ctx->identity(); }
  Elem mul(const Elem& a, const Elem& b) const { return multiply(a, b); }
  Elem inv(const Elem& a) const { return invert(a); }
  Elem pow(const Elem& a, const BigInt& n) const { return power(a, n); }
  Elem comm(const Elem& a, const Elem& b) const { return commutator(a, b); }
};

// Letter-by-letter rewriting collectors, used to cross-check the syllable
// collector.  A letter is (basis index, +1 or -1).
enum class CollectionStrategy { LeftmostUncollected, DeepestFirst };
using Letters = std::vector<std::pair<int, int>>;
NormalWord collect_letters(const FreeNilpotentGroup& g, Letters w, CollectionStrategy strategy,
                           long long step_budget = 50'000'000);

}  // namespace bogo
