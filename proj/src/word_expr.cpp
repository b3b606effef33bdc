#include "bogo/word_expr.hpp"

#include <algorithm>
#include <cctype>

namespace bogo {

namespace expr {

namespace {
Expr make(WordExpr::Kind k) {
  auto e = std::make_shared<WordExpr>();
  e->kind = k;
  return e;
}
}  // namespace

Expr identity() { return make(WordExpr::Kind::Identity); }

Expr var(int i) {
  auto e = std::make_shared<WordExpr>();
  e->kind = WordExpr::Kind::Var;
  e->var = i;
  return e;
}

Expr product(std::vector<Expr> factors) {
  if (factors.empty()) return identity();
  if (factors.size() == 1) return factors[0];
  auto e = std::make_shared<WordExpr>();
  e->kind = WordExpr::Kind::Product;
  e->kids = std::move(factors);
  return e;
}

Expr inverse(Expr x) {
  auto e = std::make_shared<WordExpr>();
  e->kind = WordExpr::Kind::Inverse;
  e->kids = {std::move(x)};
  return e;
}

Expr power(Expr x, BigInt n) {
  auto e = std::make_shared<WordExpr>();
  e->kind = WordExpr::Kind::Power;
  e->exponent = std::move(n);
  e->kids = {std::move(x)};
  return e;
}

Expr conjugate(Expr x, Expr by) {
  auto e = std::make_shared<WordExpr>();
  e->kind = WordExpr::Kind::Conjugate;
  e->kids = {std::move(x), std::move(by)};
  return e;
}

Expr commutator(std::vector<Expr> entries) {
  if (entries.size() < 2) throw std::invalid_argument("commutator needs two or more entries");
  auto e = std::make_shared<WordExpr>();
  e->kind = WordExpr::Kind::Commutator;
  e->kids = std::move(entries);
  return e;
}

}  // namespace expr

int arity(const Expr& e) {
  int a = e->kind == WordExpr::Kind::Var ? e->var + 1 : 0;
  for (const auto& k : e->kids) a = std::max(a, arity(k));
  return a;
}

namespace {

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

  Expr parse() {
    Expr e = word();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  const std::string& s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("parse_word: " + why + " at offset " + std::to_string(pos_) +
                                " in '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_factor_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    char ch = s_[pos_];
    return ch == '(' || ch == '[' || ch == '1' || std::isalpha(static_cast<unsigned char>(ch));
  }

  Expr word() {
    std::vector<Expr> fs;
    while (at_factor_start()) fs.push_back(factor());
    return expr::product(std::move(fs));
  }

  BigInt integer() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    BigInt v(s_.substr(start, pos_ - start));
    return neg ? BigInt(-v) : v;
  }

  Expr factor() {
    Expr base = atom();
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '^') break;
      ++pos_;
      skip();
      if (pos_ >= s_.size()) fail("dangling '^'");
      char ch = s_[pos_];
      if (ch == '{') {
        ++pos_;
        skip();
        // {integer} or {word} (conjugation by a compound element)
        std::size_t save = pos_;
        bool numeric = ch == '{' && pos_ < s_.size() &&
                       (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-');
        if (numeric) {
          BigInt n = integer();
          skip();
          if (pos_ < s_.size() && s_[pos_] == '}') {
            ++pos_;
            base = expr::power(base, n);
            continue;
          }
          pos_ = save;
        }
        Expr by = word();
        skip();
        if (pos_ >= s_.size() || s_[pos_] != '}') fail("expected '}'");
        ++pos_;
        base = expr::conjugate(base, by);
      } else if (ch == '-' || std::isdigit(static_cast<unsigned char>(ch))) {
        base = expr::power(base, integer());
      } else {
        base = expr::conjugate(base, atom());
      }
    }
    return base;
  }

  Expr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      Expr e = word();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (ch == '[') {
      ++pos_;
      std::vector<Expr> parts{word()};
      for (;;) {
        skip();
        if (pos_ >= s_.size()) fail("unterminated bracket");
        if (s_[pos_] == ']') {
          ++pos_;
          break;
        }
        if (s_[pos_] != ',') fail("expected ',' or ']'");
        ++pos_;
        parts.push_back(word());
      }
      if (parts.size() < 2) fail("bracket needs two or more entries");
      return expr::commutator(std::move(parts));
    }
    if (ch == '1') {
      ++pos_;
      return expr::identity();
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_++;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) fail("unknown variable '" + name + "'");
      return expr::var(static_cast<int>(it - vars_.begin()));
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }
};

}  // namespace

Expr parse_word(const std::string& text, const std::vector<std::string>& variables) {
  return Parser(text, variables).parse();
}

std::string format_word(const Expr& e, const std::vector<std::string>& variables) {
  using K = WordExpr::Kind;
  auto atomic = [&](const Expr& x) {
    std::string s = format_word(x, variables);
    bool simple = x->kind == K::Var || x->kind == K::Commutator || x->kind == K::Identity;
    return simple ? s : "(" + s + ")";
  };
  switch (e->kind) {
    case K::Identity:
      return "1";
    case K::Var:
      return e->var < static_cast<int>(variables.size()) ? variables[e->var]
                                                         : "x" + std::to_string(e->var + 1);
    case K::Product: {
      std::string s;
      for (const auto& k : e->kids) s += k->kind == K::Product ? "(" + format_word(k, variables) + ")"
                                                                : format_word(k, variables);
      return s;
    }
    case K::Inverse:
      return atomic(e->kids[0]) + "^-1";
    case K::Power: {
      std::string n = e->exponent.str();
      return atomic(e->kids[0]) + "^" + (n.size() > 1 ? "{" + n + "}" : n);
    }
    case K::Conjugate:
      return atomic(e->kids[0]) + "^{" + format_word(e->kids[1], variables) + "}";
    case K::Commutator: {
      std::string s = "[";
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        if (i) s += ",";
        s += format_word(e->kids[i], variables);
      }
      return s + "]";
    }
  }
  return "?";
}

}  // namespace bogo
