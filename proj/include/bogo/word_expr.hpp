#pragma once
// Group-word expressions over named variables: products, inverses, integer
// powers, conjugates and left-normed commutator brackets.
//
// Text syntax (whitespace ignored):
//   word   := factor*                 juxtaposition is multiplication, "1" is the identity
//   factor := atom ('^' exp)*         exp is an integer, {integer}, or an atom (conjugation)
//   atom   := var | '(' word ')' | '[' word ',' word (',' word)* ']'
//   var    := letter digit*
// Brackets are left-normed: [x,y,z] = [[x,y],z], with [x,y] = x^-1 y^-1 x y.

#include "bogo/bigint.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bogo {

struct WordExpr;
using Expr = std::shared_ptr<const WordExpr>;

struct WordExpr {
  enum class Kind { Identity, Var, Product, Inverse, Power, Conjugate, Commutator };
  Kind kind = Kind::Identity;
  int var = -1;
  BigInt exponent;
  std::vector<Expr> kids;
};

namespace expr {
Expr identity();
Expr var(int i);
Expr product(std::vector<Expr> factors);
Expr inverse(Expr x);
Expr power(Expr x, BigInt n);
Expr conjugate(Expr x, Expr by);  // by^-1 x by
Expr commutator(std::vector<Expr> entries);
inline Expr commutator(Expr x, Expr y) { return commutator(std::vector<Expr>{x, y}); }
}  // namespace expr

// Number of variables referenced (1 + largest index).
int arity(const Expr& e);

Expr parse_word(const std::string& text, const std::vector<std::string>& variables);
std::string format_word(const Expr& e, const std::vector<std::string>& variables);

// Evaluates an expression with any group arithmetic providing
//   Elem identity(), mul(a,b), inv(a), pow(a, BigInt), comm(a,b).
template <class Ops>
typename Ops::Elem evaluate(const Expr& e, const std::vector<typename Ops::Elem>& values,
                            const Ops& ops) {
  using K = WordExpr::Kind;
  switch (e->kind) {
    case K::Identity:
      return ops.identity();
    case K::Var:
      if (e->var < 0 || e->var >= static_cast<int>(values.size()))
        throw std::invalid_argument("evaluate: variable index outside assignment");
      return values[e->var];
    case K::Product: {
      auto acc = ops.identity();
      for (const auto& k : e->kids) acc = ops.mul(acc, evaluate(k, values, ops));
      return acc;
    }
    case K::Inverse:
      return ops.inv(evaluate(e->kids[0], values, ops));
    case K::Power:
      return ops.pow(evaluate(e->kids[0], values, ops), e->exponent);
    case K::Conjugate: {
      auto x = evaluate(e->kids[0], values, ops);
      auto y = evaluate(e->kids[1], values, ops);
      return ops.mul(ops.mul(ops.inv(y), x), y);
    }
    case K::Commutator: {
      auto acc = evaluate(e->kids[0], values, ops);
      for (std::size_t i = 1; i < e->kids.size(); ++i)
        acc = ops.comm(acc, evaluate(e->kids[i], values, ops));
      return acc;
    }
  }
  throw std::logic_error("evaluate: bad node");
}

}  // namespace bogo
