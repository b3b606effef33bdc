// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "bogo/catalog.hpp"
#include "bogo/hallbasis.hpp"
#include "bogo/powerexp.hpp"
#include "bogo/report.hpp"
#include "bogo/suites.hpp"
#include "bogo/varlaws.hpp"
#include "bogo/wedge.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

using namespace bogo;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& what, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > budget_s) {
    o.pass = false;
    o.detail += " [over budget " + std::to_string(static_cast<int>(budget_s)) + " s]";
  }
  failures += !o.pass;
  std::printf("%s %2d  %-34s %8.1f s  %s\n", o.pass ? "PASS" : "FAIL", n, what.c_str(), s, o.detail.c_str());
  std::fflush(stdout);
}

// Verifies a suite; details list failing items.
Outcome suite_outcome(const std::vector<VerificationReport>& reports) {
  Outcome o{true, ""};
  for (const auto& r : reports) {
    bool replayed = true;
    for (const auto& it : r.items) replayed = replayed && (it.status != ItemStatus::Verified || it.replayed);
    const bool ok = r.all_verified() && replayed;
    o.pass = o.pass && ok;
    std::ostringstream d;
    d << r.suite << " e=" << r.e << ": " << r.verified() << "/" << r.items.size() << " verified";
    for (const auto& it : r.items)
      if (it.status != ItemStatus::Verified)
        d << "; NOT REDUCED \"" << it.name << "\" residual " << it.residual;
    if (!replayed) d << "; some certificates did not replay";
    o.detail += (o.detail.empty() ? "" : " | ") + d.str();
  }
  return o;
}

std::string join(const std::vector<BigInt>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + to_string(x);
  return "[" + s + "]";
}

}  // namespace

int main() {
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  criterion(1, "expansion table 23/23", 10, [] {
    const auto r = verify_table1();
    return Outcome{r.all_match() && r.matched == 23, std::to_string(r.matched) + "/23 rows match"};
  });

  criterion(2, "(ab)^n vs polynomials, n=1..12", 30, [] {
    auto g = FreeNilpotentGroup::create(2, 6);
    const auto ps = expansion_polynomials(*g);
    const auto ab = multiply(g->generator(0), g->generator(1));
    NormalWord acc = ab;
    int agree = 0, total = 0;
    for (int n = 1; n <= 12; ++n, acc = multiply(acc, ab))
      for (const auto& p : ps) {
        ++total;
        agree += acc.exponent(p.basis_index) == p.evaluate(n);
      }
    return Outcome{agree == total, std::to_string(agree) + "/" + std::to_string(total) + " coordinates agree"};
  });

  criterion(3, "basis sizes per weight", 60, [] {
    std::vector<long long> k2, k3, o3;
    const auto t2 = generate_basis(2, 6), t3 = generate_basis(3, 7);
    for (int w = 1; w <= 6; ++w) k2.push_back(t2.layer_size(w));
    for (int w = 1; w <= 7; ++w) {
      k3.push_back(t3.layer_size(w));
      o3.push_back(oracle::lyndon_words(3, w));
    }
    const bool ok = k2 == std::vector<long long>{2, 1, 2, 3, 6, 9} &&
                    k3 == std::vector<long long>{3, 3, 8, 18, 48, 116, 312} && k3 == o3;
    std::string d = "k=2:";
    for (auto x : k2) d += " " + std::to_string(x);
    d += "  k=3:";
    for (auto x : k3) d += " " + std::to_string(x);
    return Outcome{ok, d};
  });

  criterion(4, "exponent-4 suite", 1800, [] {
    Outcome o = suite_outcome({verify_suite(SuiteCase::Exp4, 2)});
    std::string stab;
    for (auto s : {InstanceStrategy::WeightedSimplex, InstanceStrategy::RandomWords}) {
      std::vector<BigInt> orders;
      for (int c = 5; c <= 6; ++c) {
        ClosureOptions opt;
        opt.strategy = s;
        auto cl = law_closure(FreeNilpotentGroup::create(2, c), {make_law("exp4", "x^4")}, opt);
        orders.push_back(cl.quotient_order().value_or(0));
      }
      const bool ok = orders[0] == (BigInt(1) << 12) && orders[1] == orders[0];
      o.pass = o.pass && ok;
      stab += " " + strategy_name(s) + ": |B(2,4)| = " + to_string(orders[0]) + " at class 5, " +
              to_string(orders[1]) + " at class 6;";
    }
    o.detail += " |" + stab;
    return o;
  });

  criterion(5, "4-Engel suite, e = 3", 1800, [] { return suite_outcome({verify_suite(SuiteCase::Engel4, 3)}); });

  criterion(6, "class-5 suite, e = 3, 4", 600, [] {
    return suite_outcome({verify_suite(SuiteCase::Class5, 3), verify_suite(SuiteCase::Class5, 4)});
  });

  criterion(7, "metabelian suite, e = 4, 8", 60, [] {
    return suite_outcome({verify_suite(SuiteCase::Metabelian, 4), verify_suite(SuiteCase::Metabelian, 8)});
  });

  criterion(8, "Schur multipliers", 120, [] {
    struct Case {
      std::string name;
      PcPresentation g;
      oracle::Table t;
      std::vector<BigInt> expected;
    };
    std::vector<Case> cases;
    for (int n : {2, 4, 8, 9, 16, 25}) {
      std::vector<std::int64_t> orders;
      int m = n;
      int p = n % 2 == 0 ? 2 : (n % 3 == 0 ? 3 : 5);
      while (m > 1) orders.push_back(p), m /= p;
      PcPresentation c(orders, "C" + std::to_string(n));
      for (std::size_t i = 0; i + 1 < orders.size(); ++i) c.set_power(static_cast<int>(i), {{static_cast<int>(i) + 1, 1}});
      cases.push_back({c.name(), c, oracle::cyclic_product({n}), {}});
    }
    auto read = [](const std::string& f) {
      return read_catalog_file(std::string(BOGO_FIXTURES) + "/" + f).presentation.value();
    };
    cases.push_back({"C2xC2", read("elementary4.pc"), oracle::cyclic_product({2, 2}), {2}});
    cases.push_back({"D8", read("dihedral8.pc"), oracle::dihedral(4), {2}});
    cases.push_back({"Q8", read("quaternion8.pc"), oracle::quaternion8(), {}});
    Outcome o{true, ""};
    for (const auto& c : cases) {
      const auto m = schur_multiplier(c.g).torsion;
      const auto ref = oracle::bar_h2(c.t).torsion;
      const bool ok = m == ref && m == c.expected;
      o.pass = o.pass && ok;
      o.detail += c.name + " " + join(m) + (ok ? "" : " (oracle " + join(ref) + ")") + "; ";
    }
    return o;
  });

  ScanReport scan;
  std::vector<CatalogEntry> entries;
  criterion(9, "Bogomolov scan of the catalog", 3600, [&] {
    entries = read_catalog(BOGO_CATALOG);
    scan = scan_catalog(entries, static_cast<int>(jobs));
    std::map<std::string, const CatalogEntry*> by_name;
    for (const auto& e : entries) by_name[e.name] = &e;
    int small_trivial = 0, small = 0, nontrivial64 = 0, designated = 0, bad = 0;
    for (const auto& row : scan.rows) {
      if (row.status != "ok") ++bad;
      const BigInt n(row.order);
      if (n < 64) {
        ++small;
        small_trivial += row.b0 == "[]";
      } else if (n == 64) {
        nontrivial64 += row.b0 != "[]";
        const auto* e = by_name.at(row.name);
        if (e->expected_b0 && *e->expected_b0 == std::vector<BigInt>{2}) designated += row.b0 == "[2]";
      }
      if (!row.crosscheck || !row.b0_divides) ++bad;
    }
    const bool ok = bad == 0 && small_trivial == small && designated >= 2 && designated == nontrivial64 &&
                    scan.summary.violations == 0 && scan.summary.errors == 0 && scan.summary.mismatches == 0;
    std::ostringstream d;
    d << scan.rows.size() << " groups; B0 trivial for " << small_trivial << "/" << small << " of order < 64; "
      << designated << " annotated order-64 groups with B0 = [2] (" << nontrivial64 << " nontrivial in total); "
      << scan.summary.violations << " violations, " << scan.summary.mismatches << " mismatches, "
      << scan.summary.errors << " errors";
    return Outcome{ok, d.str()};
  });

  criterion(10, "exp(G^G) | exp G under hypotheses", 60, [&] {
    int tagged = 0, bad = 0;
    for (const auto& row : scan.rows) {
      bool hyp = false;
      for (const auto& t : row.tags) hyp = hyp || t == "metabelian" || t == "class<=5" || t == "exponent4";
      if (!hyp) continue;
      ++tagged;
      bad += !row.wedge_divides;
    }
    return Outcome{tagged > 0 && bad == 0,
                   std::to_string(tagged) + " tagged groups, " + std::to_string(bad) + " violations"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures ? 1 : 0;
}
