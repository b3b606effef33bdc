#include "bogo/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>

namespace bogo {

std::optional<SuiteCase> parse_suite_case(const std::string& s) {
  if (s == "metabelian") return SuiteCase::Metabelian;
  if (s == "exp4") return SuiteCase::Exp4;
  if (s == "engel4") return SuiteCase::Engel4;
  if (s == "class5") return SuiteCase::Class5;
  return std::nullopt;
}

std::string suite_name(SuiteCase c) {
  switch (c) {
    case SuiteCase::Metabelian: return "metabelian";
    case SuiteCase::Exp4: return "exp4";
    case SuiteCase::Engel4: return "engel4";
    case SuiteCase::Class5: return "class5";
  }
  return "?";
}

std::string strategy_name(InstanceStrategy s) {
  switch (s) {
    case InstanceStrategy::WeightedSimplex: return "simplex";
    case InstanceStrategy::BasicPairs: return "basic-pairs";
    case InstanceStrategy::RandomWords: return "random-words";
    case InstanceStrategy::Explicit: return "explicit";
  }
  return "?";
}

std::optional<InstanceStrategy> parse_strategy(const std::string& s) {
  if (s == "simplex") return InstanceStrategy::WeightedSimplex;
  if (s == "basic-pairs") return InstanceStrategy::BasicPairs;
  if (s == "random-words") return InstanceStrategy::RandomWords;
  return std::nullopt;
}

int VerificationReport::verified() const {
  int n = 0;
  for (const auto& it : items) n += it.status == ItemStatus::Verified;
  return n;
}

bool VerificationReport::all_verified() const {
  return !vacuous && !items.empty() && verified() == static_cast<int>(items.size());
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string pw(const BigInt& n) { return "^" + to_string(n); }
BigInt C(const BigInt& n, int k) { return binomial(n, k); }

using RelationFn = std::function<std::vector<AdjoinedRelation>(const FreeNilpotentGroup&)>;

struct ContextDef {
  int k = 0, c = 0;
  std::vector<Law> laws;
  RelationFn relations;
  std::optional<int> kill_torsion;
  // Instance tuples that generate the verbal subgroup on their own; they
  // replace the default simplex instances.
  std::function<std::vector<std::vector<Syllables>>(const FreeNilpotentGroup&)> tuples = {};
};

struct Claim {
  std::string lhs, rhs = "1";
};

// Powers c^m of every basic commutator of weight >= w, as adjoined relations.
std::vector<AdjoinedRelation> basic_powers(const FreeNilpotentGroup& g, int from_weight,
                                           const BigInt& m, const std::string& name) {
  std::vector<AdjoinedRelation> out;
  const auto& b = g.basis();
  for (int i = 0; i < b.size(); ++i)
    if (b.weight(i) >= from_weight)
      out.push_back({name + ": " + b.render(i) + pw(m), g.basic(i, m), false});
  return out;
}

std::vector<Claim> basic_power_claims(int k, int c, int from_weight, int to_weight, const BigInt& m) {
  auto g = FreeNilpotentGroup::create(k, c);
  std::vector<Claim> out;
  for (int i = 0; i < g->basis().size(); ++i) {
    const int w = g->basis().weight(i);
    if (w >= from_weight && w <= to_weight) out.push_back({g->basis().render(i) + pw(m)});
  }
  return out;
}

class Runner {
 public:
  Runner(const SuiteOptions& opt, VerificationReport& rep) : opt_(opt), rep_(rep) {}

  void define(const std::string& name, ContextDef def) { defs_[name] = std::move(def); }

  void item(const std::string& name, const std::string& ctx, const std::vector<Claim>& claims,
            const std::vector<std::string>& vars, std::vector<std::string> notes = {}) {
    const auto t0 = Clock::now();
    const Closure& cl = closure(ctx);
    const FreeNilpotentGroup& g = cl.group();
    std::vector<NormalWord> gens;
    for (int i = 0; i < std::min<int>(vars.size(), g.generator_count()); ++i) gens.push_back(g.generator(i));
    SuiteItem it;
    it.name = name;
    it.context = ctx;
    it.notes = std::move(notes);
    it.status = ItemStatus::Verified;
    it.replayed = true;
    std::set<std::string> hyp;
    for (const auto& cl_ : claims) {
      it.claims.push_back(cl_.lhs + " = " + cl_.rhs);
      const NormalWord l = evaluate_word(parse_word(cl_.lhs, vars), gens);
      const NormalWord r = evaluate_word(parse_word(cl_.rhs, vars), gens);
      const CheckResult res = cl.check(multiply(l, invert(r)));
      if (!res.member) {
        if (it.status == ItemStatus::Verified) it.residual = res.residual.str();
        it.status = ItemStatus::NotReduced;
        it.replayed = false;
        continue;
      }
      it.certificate_terms += static_cast<long long>(res.certificate.size());
      if (opt_.replay && !cl.replay(res)) {
        it.status = ItemStatus::NotReduced;
        it.replayed = false;
        if (it.residual.empty()) it.residual = "certificate replay failed";
      }
      for (auto& h : cl.hypotheses(res)) hyp.insert(h);
    }
    if (!opt_.replay) it.replayed = false;
    it.hypotheses.assign(hyp.begin(), hyp.end());
    it.seconds = since(t0);
    rep_.items.push_back(std::move(it));
  }

 private:
  const Closure& closure(const std::string& name) {
    auto it = built_.find(name);
    if (it != built_.end()) return *it->second;
    const ContextDef& d = defs_.at(name);
    auto g = FreeNilpotentGroup::create(d.k, d.c);
    ClosureOptions o;
    o.depth = opt_.depth;
    o.budget = opt_.budget;
    o.strategy = opt_.strategy;
    o.kill_torsion_prime = d.kill_torsion;
    if (d.relations) o.relations = d.relations(*g);
    if (d.tuples && o.strategy == InstanceStrategy::WeightedSimplex) {
      o.strategy = InstanceStrategy::Explicit;
      o.tuples = d.tuples(*g);
    }
    auto cl = std::make_unique<Closure>(g, d.laws, o);
    ContextSummary s;
    s.name = name;
    s.k = d.k;
    s.c = d.c;
    for (const auto& l : d.laws) s.laws.push_back(l.name + ": " + l.text);
    for (const auto& r : o.relations) s.relations.push_back(r.name + (r.assumed ? " (assumed)" : ""));
    if (d.kill_torsion) s.relations.push_back("no elements of order " + std::to_string(*d.kill_torsion));
    s.strategy = strategy_name(o.strategy);
    s.depth = o.depth > 0 ? o.depth : d.c;
    const auto& st = cl->stats();
    s.instances = st.instances;
    s.sifts = st.sifts;
    s.pivots = st.pivots;
    s.free_rank = cl->free_rank();
    auto ord = cl->quotient_order();
    s.order = ord ? to_string(*ord) : "infinite";
    s.scalar = st.scalar;
    s.budget_exhausted = st.budget_exhausted;
    s.seconds = st.seconds;
    rep_.contexts.push_back(std::move(s));
    return *(built_[name] = std::move(cl));
  }

  const SuiteOptions& opt_;
  VerificationReport& rep_;
  std::map<std::string, ContextDef> defs_;
  std::map<std::string, std::unique_ptr<Closure>> built_;
};

const std::vector<std::string> XYZ = {"x", "y", "z"};
const std::vector<std::string> ABC = {"a", "b", "c", "d"};
const std::vector<std::string> GHK = {"g", "h", "k"};

// ---------------------------------------------------------------- metabelian

// [F',F'] is the normal closure of [c_i,c_j] over basic commutators c_i, c_j of
// weight >= 2, and each such bracket is a law instance [[u_i,v_i],[u_j,v_j]].
std::vector<std::vector<Syllables>> metabelian_tuples(const FreeNilpotentGroup& g) {
  const BasisTable& b = g.basis();
  std::vector<std::vector<Syllables>> out;
  auto one = [](int i) { return Syllables{{i, BigInt(1)}}; };
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < i; ++j) {
      if (b[i].left < 0 || b[j].left < 0 || b.weight(i) + b.weight(j) > g.class_bound()) continue;
      out.push_back({one(b[i].left), one(b[i].right), one(b[j].left), one(b[j].right)});
    }
  return out;
}

void metabelian_suite(Runner& run, VerificationReport& rep, int e) {
  const Law meta = make_law("metabelian", "[[x1,x2],[x3,x4]]");
  run.define("metabelian F(2," + std::to_string(e + 1) + ")", {2, e + 1, {meta}, {}, {}, metabelian_tuples});
  const std::string ctx = "metabelian F(2," + std::to_string(e + 1) + ")";
  if (e == 1) {
    rep.vacuous = true;
    rep.note = "exponent 1 forces every group to be abelian; the expansion degenerates to 1 = [x,y], "
               "which does not hold in the free metabelian group";
    run.item("1 = [x,y^1]", ctx, {{"[x,y]"}}, XYZ);
    return;
  }
  // [x, y^e] = [x,y]^e prod_{k>=2} [x,_k y]^{C(e,k)}
  auto xky = [](int k) {
    std::string s = "[x";
    for (int i = 0; i < k; ++i) s += ",y";
    return s + "]";
  };
  std::string rhs = "[x,y]" + pw(e), tail, inner;
  for (int k = 2; k <= e; ++k) {
    tail += xky(k) + pw(C(e, k));
    inner += xky(k - 1) + pw(C(e, k));
  }
  rhs += tail;
  run.item("[x,y^e] expansion", ctx, {{"[x,y" + pw(e) + "]", rhs}}, XYZ);
  run.item("tail is a commutator with y", ctx, {{tail, "[" + inner + ",y]"}}, XYZ);
}

// ---------------------------------------------------------------- exponent 4

void exp4_suite(Runner& run) {
  const Law x4 = make_law("exp4", "x1^4");
  const std::vector<Law> k_laws = {make_law("[x1^4,x2]", "[x1^4,x2]"),
                                   make_law("[x1,x2]^4", "[x1,x2]^4"),
                                   make_law("[[x1,x2]^2,x1]", "[[x1,x2]^2,x1]"),
                                   make_law("[x1,[x2,x3],[x2,x3],[x2,x3]]",
                                            "[x1,[x2,x3],[x2,x3],[x2,x3]]")};
  run.define("B(2,4) = F(2,5)/exp4", {2, 5, {x4}, {}, {}});
  run.define("B(3,4) = F(3,7)/exp4", {3, 7, {x4}, {}, {}});
  run.define("F(2,5)", {2, 5, {}, {}, {}});
  run.define("K(2,5)", {2, 5, k_laws, {}, {}});
  run.define("K(3,7)", {3, 7, k_laws, {}, {}});

  run.item("[[a,b]^2,a] = 1 in exponent 4", "B(2,4) = F(2,5)/exp4", {{"[[x,y]^2,x]"}}, XYZ);
  run.item("[a,b,a,a^2[a,b]] = 1 in exponent 4", "B(2,4) = F(2,5)/exp4", {{"[x,y,x,x^2[x,y]]"}}, XYZ);
  run.item("[c,[a,b],[a,b],[a,b]] = 1 in exponent 4", "B(3,4) = F(3,7)/exp4",
           {{"[z,[x,y],[x,y],[x,y]]"}}, XYZ);
  run.item("[[x,y]^2,x] expanded", "F(2,5)", {{"[[x,y]^2,x]", "[x,y,x]^2[x,y,x,[x,y]]"}}, XYZ);
  run.item("1 = [x,y,x]^2[x,y,x,[x,y]]", "K(2,5)", {{"[x,y,x]^2[x,y,x,[x,y]]"}}, XYZ);
  run.item("[[x,y]^2,x,w] = [x,y,x,w]^2, w in {x,y}", "F(2,5)",
           {{"[[x,y]^2,x,x]", "[x,y,x,x]^2"}, {"[[x,y]^2,x,y]", "[x,y,x,y]^2"}}, XYZ);
  run.item("gamma_4(<x,y>)^2 = 1", "K(2,5)", basic_power_claims(2, 5, 4, 5, 2), ABC);
  run.item("[x^4,y] expansion", "F(2,5)",
           {{"[x^4,y]", "[x,y]^4[x,y,x]^6[x,y,x,x]^4[x,y,x,x,x][x,y,x,[x,y]]^14"}}, XYZ);
  run.item("1 = [x^4,y] = [x,y]^4[x,y,x]^2[x,y,x,x,x]", "K(2,5)",
           {{"[x^4,y]", "[x,y]^4[x,y,x]^2[x,y,x,x,x]"}, {"[x,y]^4[x,y,x]^2[x,y,x,x,x]"}}, XYZ);
  run.item("[x,y,x,x^2[x,y]] expanded", "F(2,5)",
           {{"[x,y,x,x^2[x,y]]", "[x,y,x,x]^2[x,y,x,x,x][x,y,x,[x,y]]"}}, XYZ);
  run.item("[x,y,x,x,x] = [x,y,x,[x,y]]", "K(2,5)", {{"[x,y,x,x,x]", "[x,y,x,[x,y]]"}}, XYZ);
  run.item("[x,y]^4 = 1", "K(2,5)", {{"[x,y]^4"}}, XYZ);

  const std::string w = "[z,[x,y]]^2[z,[x,y],[x,y],z][z,[x,y],z,z]";
  const std::vector<std::string> ws = {
      "[x,z,z,x^2z^2[z,y,x][z,x,y,y]]",
      "[y^2z^2,[z,y,z]]",
      "[y^2z^2,[y,x,x,x][z,x,x,x]]",
      "[y^2z^2,[z,x,z,z][z,y,y,x,x]]",
      "[[z,y][z,x]z^2,z^2[z,x][z,y][z,x,x][z,x,y][z,y,x][z,y,y][z,x,x,x][z,y,y,x,x]]",
      "[[z,y][z,x]z^2,[z,y,z,x][z,y,z,y][z,y,z,x,x]]",
      "[[z,y][z,x]z^2,[z,x,z,z]]"};
  run.item("([x,y]z)^4 = z^4 w", "K(3,7)", {{"([x,y]z)^4", "z^4" + w}}, XYZ);
  std::string prod;
  for (const auto& wi : ws) prod += wi;
  run.item("w = w1 w2 ... w7", "K(3,7)", {{w, prod}}, XYZ);
  std::vector<Claim> wi_claims;
  for (const auto& wi : ws) wi_claims.push_back({wi});
  run.item("w_i = 1 in exponent 4 (i = 1..7)", "B(3,4) = F(3,7)/exp4", wi_claims, XYZ,
           {"interpretation: the inspection of the B(3,4) presentation is read as "
            "'each w_i vanishes in every exponent-4 group', checked in the exponent-4 closure"});
}

// ---------------------------------------------------------------- 4-Engel

void engel4_suite(Runner& run, int e) {
  const BigInt q = BigInt(1) << e;
  const Law engel = make_law("engel4", "[x1,x2,x2,x2,x2]");
  const Law expq = make_law("exp" + to_string(q), "x1^" + to_string(q));
  const std::string E2 = "E(2,7) = F(2,7)/engel4";
  const std::string E2q = "F(2,7)/engel4,exp" + to_string(q);
  const std::string E3q = "F(3,7)/engel4,exp" + to_string(q);
  const std::string E3t = "F(3,7)/engel4,exp" + to_string(q) + ", no 3-torsion, gamma_7^2";
  // The exponent law goes first: its pivots bound every coordinate, so the
  // Engel instances reduce without coefficient growth.
  run.define(E2, {2, 7, {engel}, {}, {}});
  run.define(E2q, {2, 7, {expq, engel}, {}, {}});
  run.define(E3q, {3, 7, {expq, engel}, {}, {}});
  // The pure 4-Engel quotient of F(3,7) is infinite and its integer echelon
  // does not finish in budget; (c) is checked in the exponent-2^e groups
  // where it is applied.
  run.define(E3t, {3, 7, {expq, engel},
                   [](const FreeNilpotentGroup& g) {
                     return basic_powers(g, 7, 2, "target gamma_7^2");
                   },
                   3});
  const std::string mod8 = "three generators at class 7: holds modulo gamma_8";

  run.item("gamma_7(<a,b>) = 1", E2, basic_power_claims(2, 7, 7, 7, 1), ABC);
  for (int n = 0; n <= 8; ++n) {
    const BigInt N(n);
    const std::string rhs = "[a,b]" + pw(N) + "[a,b,a]" + pw(C(N, 2)) + "[a,b,a,a]" + pw(C(N, 3)) +
                            "[a,b,a,[a,b]]" + pw(C(N, 2) + 2 * C(N, 3));
    run.item("[a^n,b] expansion, n = " + std::to_string(n), E2, {{"[a" + pw(N) + ",b]", rhs}}, ABC);
  }
  run.item("[b,a,a,[b,a],a] = [b,a,a,a,b,a] = 1", E2, {{"[b,a,a,[b,a],a]"}, {"[b,a,a,a,b,a]"}}, ABC);
  run.item("[b,a,a,b,a]^3[b,a,b,b,a] = [a,b,a,[a,b]][b,a,b,a,b,a]^3", E2,
           {{"[b,a,a,b,a]^3[b,a,b,b,a]", "[a,b,a,[a,b]][b,a,b,a,b,a]^3"}}, ABC);
  run.item("[a,b,a]^(q/2) = [a,b,b]^(q/2) = 1", E2q,
           {{"[a,b,a]" + pw(q / 2)}, {"[a,b,b]" + pw(q / 2)}}, ABC);
  run.item("gamma_4(<a,b,c>)^(q/2) = 1", E3q, basic_power_claims(3, 7, 4, 7, q / 2), ABC, {mod8});
  run.item("[c,[a,b],[a,b],[a,b]] in gamma_7^2 gamma_8 (no elements of order 3)", E3t,
           {{"[c,[a,b],[a,b],[a,b]]"}}, ABC,
           {mod8, "gamma_7^2 is adjoined as the target subgroup; 3-torsion of the central layer is killed"});

  const BigInt q2 = C(q, 2), q4 = C(q, 4);
  run.item("[a,b]^C(q,2) expansion (from (ab)^q = 1)", E2q,
           {{"[a,b]" + pw(q2),
             "([b,a,a,a][b,a,a,b][b,a,b,b][b,a,a,[b,a]][b,a,a,a,b][b,a,b,[b,a,a]][b,a,a,a,b,b])" +
                 pw(q4)}},
           ABC);
  run.item("[[a,b]^C(q,2),a] = ([b,a,a,b,a][b,a,b,b,a])^C(q,4)", E2q,
           {{"[[a,b]" + pw(q2) + ",a]", "([b,a,a,b,a][b,a,b,b,a])" + pw(q4)}}, ABC);
  run.item("[[a,b]^(q/2),a] = [a,b,a,[a,b]]^C(q/2,2)", E2q,
           {{"[[a,b]" + pw(q / 2) + ",a]", "[a,b,a,[a,b]]" + pw(C(q / 2, 2))}}, ABC);
  run.item("[b,a,b,a,b,a]^(q/4) = 1", E2q, {{"[b,a,b,a,b,a]" + pw(q / 4)}}, ABC);
  run.item("gamma_6(<a,b>)^(q/4) = 1", E2q, basic_power_claims(2, 7, 6, 7, q / 4), ABC);
  run.item("1 = ([b,a,b,a][b,a,a,b])^(q/4)", E2q, {{"([b,a,b,a][b,a,a,b])" + pw(q / 4)}}, ABC);
  run.item("[b,a,a,b,a]^(q/4) = [b,a,b,b,a]^(q/4) = 1", E2q,
           {{"[b,a,a,b,a]" + pw(q / 4)}, {"[b,a,b,b,a]" + pw(q / 4)}}, ABC);
  run.item("[[a,b]^(q/2),a] = 1", E2q, {{"[[a,b]" + pw(q / 2) + ",a]"}}, ABC);
  run.item("[c,[a,b],[a,b],[a,b]]^(q/4) = 1", E3q, {{"[c,[a,b],[a,b],[a,b]]" + pw(q / 4)}}, ABC,
           {mod8});
}

// ---------------------------------------------------------------- class 5

void class5_suite(Runner& run, int e) {
  const BigInt q = BigInt(1) << e;
  const BigInt f = C(q, 4);
  const std::string qs = to_string(q);
  const Law expq = make_law("exp" + qs, "x1^" + qs);
  const Law central = make_law("[x1^" + qs + ",x2]", "[x1^" + qs + ",x2]");
  const std::string G3 = "F(3,5)/exp" + qs, G4 = "F(4,5)/exp" + qs;
  const std::string H3 = "H(3,5): [x1^" + qs + ",x2], gamma_4^" + to_string(q / 2);
  const std::string H2 = "H(2,5): [x1^" + qs + ",x2], gamma_4^" + to_string(q / 2) + ", gamma_3^" + qs;
  run.define(G3, {3, 5, {expq}, {}, {}});
  run.define(G4, {4, 5, {expq}, {}, {}});
  run.define("F(2,5)", {2, 5, {}, {}, {}});
  run.define("F(3,5)", {3, 5, {}, {}, {}});
  run.define(H3, {3, 5, {central},
                  [q](const FreeNilpotentGroup& g) { return basic_powers(g, 4, q / 2, "gamma_4"); },
                  {}});
  run.define(H2, {2, 5, {central},
                  [q](const FreeNilpotentGroup& g) {
                    auto r = basic_powers(g, 4, q / 2, "gamma_4");
                    for (auto& x : basic_powers(g, 3, q, "gamma_3")) r.push_back(std::move(x));
                    return r;
                  },
                  {}});

  run.item("1 = [h,k,g]^C(q,2)[h,k,g,[h,k]]^(C(q,2)+2C(q,3))[h,k,g,g,g]^C(q,4)", G3,
           {{"[h,k,g]" + pw(C(q, 2)) + "[h,k,g,[h,k]]" + pw(C(q, 2) + 2 * C(q, 3)) + "[h,k,g,g,g]" +
             pw(f)}},
           GHK);
  run.item("gamma_4(G)^(q/2) = 1", G4, {{"[a,b,c,d]" + pw(q / 2)}}, ABC,
           {"lifted to the cover by the class restriction; adjoined below as gamma_4^(q/2)"});
  run.item("[[x,y]^q,z] = [x,y,z]^q[x,y,z,[x,y]]^C(q,2)", "F(3,5)",
           {{"[[x,y]" + pw(q) + ",z]", "[x,y,z]" + pw(q) + "[x,y,z,[x,y]]" + pw(C(q, 2))}}, XYZ);
  run.item("gamma_3(H)^q = 1", H3, {{"[x,y,z]" + pw(q)}}, XYZ);

  const std::string e1 = "[x,y]" + pw(q) + "[x,y,x]" + pw(C(q, 2)) + "[x,y,x,x,x]" + pw(f);
  const std::string e2 = "[x,y]" + pw(q) + "[x,y,y]" + pw(C(q, 2)) + "[x,y,y,y,y]" + pw(f);
  run.item("1 = [x^q,y] expanded", H2, {{"[x" + pw(q) + ",y]", e1}, {e1}}, XYZ);
  run.item("1 = [y^q,x] expanded (x, y interchanged)", H2, {{e2}}, XYZ);
  run.item("[x,y]^q = (six weight-5 commutators)^f", H2,
           {{"[x,y]" + pw(q),
             "([x,y,x,x,y][x,y,x,y,x][x,y,x,y,y][x,y,y,x,x][x,y,y,x,y][x,y,y,y,x])" + pw(f)}},
           XYZ);
  run.item("[x,y,x,y,x] = [x,y,y,x,x], [x,y,x,y,y] = [x,y,y,x,y]", "F(2,5)",
           {{"[x,y,x,y,x]", "[x,y,y,x,x]"}, {"[x,y,x,y,y]", "[x,y,y,x,y]"}}, XYZ);
  run.item("[x,y]^q = ([x,y,x,x,y][x,y,y,y,x])^f", H2,
           {{"[x,y]" + pw(q), "([x,y,x,x,y][x,y,y,y,x])" + pw(f)}}, XYZ);

  const std::string u = "([y,x][y,x,y])";
  const std::string v = "([y,x]^-1[y,x,y]^-1[y,x,x,x][y,x,y,x])";
  const std::string fs = to_string(f);
  const std::string w = "[y^" + fs + u + ",y^-" + fs + v + "]";
  run.item("w expanded", "F(2,5)",
           {{w, "[y^" + fs + "," + v + "][" + u + ",y^-" + fs + "][" + u + "," + v + "]([y," + v + "," +
                    u + "][" + u + ",y," + v + "]^-1)^" + fs}},
           XYZ);
  run.item("[u,v] = 1", "F(2,5)", {{"[" + u + "," + v + "]"}}, XYZ);
  run.item("[y,v,u][u,y,v] = 1", "F(2,5)", {{"[y," + v + "," + u + "][" + u + ",y," + v + "]"}}, XYZ);
  run.item("commutators of y^-1 with u", H2,
           {{"[y^-1," + u + "]", "[y,x,y]"},
            {"[y^-1," + u + ",y^-1]", "[y,x,y,y,y][y,x,y,y]^-1"},
            {"[y^-1," + u + ",y^-1,y^-1]", "[y,x,y,y,y]"}},
           XYZ);
  run.item("[u,y^-f] expanded", H2,
           {{"[" + u + ",y^-" + fs + "]", "[y,x,y]^-" + fs + "[y,x,y,y]" + pw(C(f, 2)) + "[y,x,y,y,y]" +
                                              pw(-C(f, 2) - C(f, 3))}},
           XYZ);
  // The last two factors carry exponent -1 (already in F(2,5)); with +1 the
  // two versions differ by ([y,x,x,x,y][y,x,y,x,y])^2, which the f-th power
  // below kills in H.
  run.item("[y,v] expanded", H2,
           {{"[y," + v + "]", "[y,x,y][y,x,y,[x,y]][y,x,y,y][y,x,x,x,y]^-1[y,x,y,x,y]^-1"}}, XYZ,
           {"exponents of [y,x,x,x,y] and [y,x,y,x,y] are -1; the +1 variant is off by their squares"});
  run.item("([y,x,x,x,y][y,x,y,x,y])^(2f) = 1", H2, {{"([y,x,x,x,y][y,x,y,x,y])^" + to_string(2 * f)}}, XYZ);
  run.item("[y^f,v] expanded", H2,
           {{"[y^" + fs + "," + v + "]", "[y,x,y]^" + fs + "[y,x,y,[x,y]]^" + fs + "[y,x,y,y]" +
                                             pw(f + C(f, 2)) + "[y,x,x,x,y]^" + fs + "[y,x,y,x,y]^" + fs +
                                             "[y,x,y,y,y]" + pw(C(f, 2) + C(f, 3))}},
           XYZ);
  run.item("w collected", H2,
           {{w, "[y,x,y,y]" + pw(f + 2 * C(f, 2)) + "[y,x,y,[x,y]]^" + fs + "([y,x,x,x,y][y,x,y,x,y])^" +
                    fs}},
           XYZ);
  run.item("[y,x,y,y]^(f^2) = 1", H2, {{"[y,x,y,y]" + pw(f * f)}}, XYZ);
  run.item("[y,x,y,[x,y]] = [y,x,y,x,y][x,y,y,y,x]", "F(2,5)",
           {{"[y,x,y,[x,y]]", "[y,x,y,x,y][x,y,y,y,x]"}}, XYZ);
  run.item("w = ([x,y,x,x,y][x,y,y,y,x])^f", H2, {{w, "([x,y,x,x,y][x,y,y,y,x])^" + fs}}, XYZ);
  run.item("w = [x,y]^q", H2, {{w, "[x,y]" + pw(q)}}, XYZ);
}

}  // namespace

VerificationReport verify_suite(SuiteCase which, int e, const SuiteOptions& opt) {
  const auto t0 = Clock::now();
  VerificationReport rep;
  rep.suite = suite_name(which);
  rep.e = e;
  Runner run(opt, rep);
  switch (which) {
    case SuiteCase::Metabelian:
      if (e < 1) throw std::invalid_argument("metabelian suite needs e >= 1");
      if (e > 8) throw std::invalid_argument("metabelian suite supports e <= 8 (class e+1 <= 9)");
      metabelian_suite(run, rep, e);
      break;
    case SuiteCase::Exp4:
      rep.e = 2;
      exp4_suite(run);
      break;
    case SuiteCase::Engel4:
      if (e < 3 || e > 4) throw std::invalid_argument("engel4 suite is instantiated at e = 3 or 4");
      engel4_suite(run, e);
      break;
    case SuiteCase::Class5:
      if (e < 3 || e > 4) throw std::invalid_argument("class5 suite is instantiated at e = 3 or 4");
      class5_suite(run, e);
      break;
  }
  rep.seconds = since(t0);
  return rep;
}

}  // namespace bogo
