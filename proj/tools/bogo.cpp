// Command-line front end.  Exit codes: 0 success, 1 failed verification or
// violation, 2 input error.

#include "bogo/catalog.hpp"
#include "bogo/hallbasis.hpp"
#include "bogo/powerexp.hpp"
#include "bogo/report.hpp"
#include "bogo/suites.hpp"
#include "bogo/wedge.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace bogo;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ReportFormat format_of(const std::string& s) {
  auto f = parse_format(s);
  if (!f) throw InputError("unknown format '" + s + "' (json, csv, text)");
  return *f;
}

PcPresentation load(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw InputError("cannot read " + path);
  auto e = read_catalog_file(path);
  if (!e.presentation) throw InputError(path + ": " + e.error);
  return *e.presentation;
}

void write(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hall collection, law closures and Bogomolov multipliers of p-groups"};
  app.require_subcommand(1);
  std::string format = "text", out;
  bool no_timing = false;
  auto common = [&](CLI::App* s) {
    s->add_option("--format", format, "json, csv or text")->capture_default_str();
    s->add_option("-o,--out", out, "write the report to a file");
  };

  int k = 2, c = 6;
  auto* basis = app.add_subcommand("basis", "list basic commutators of weight <= c on k generators");
  basis->add_option("--k", k)->capture_default_str();
  basis->add_option("--c", c)->capture_default_str();

  int n = -1;
  auto* expand = app.add_subcommand("expand", "collected form of (ab)^n as polynomials in n");
  expand->add_option("--c", c)->capture_default_str();
  expand->add_option("--n", n, "also evaluate at this n");

  auto* table1 = app.add_subcommand("verify-table1", "recompute the (ab)^n coefficient table");
  common(table1);

  std::string which;
  int e = 3, depth = 0;
  long long budget = 0;
  std::string strategy = "simplex";
  auto* verify = app.add_subcommand("verify", "run an identity suite: metabelian, exp4, engel4, class5");
  verify->add_option("case", which)->required();
  verify->add_option("--e", e, "exponent parameter")->capture_default_str();
  verify->add_option("--depth", depth, "instance depth (0: class bound)");
  verify->add_option("--budget", budget, "sift budget per closure (0: unlimited)");
  verify->add_option("--strategy", strategy, "simplex, basic-pairs or random-words")->capture_default_str();
  verify->add_flag("--no-timing", no_timing);
  common(verify);

  std::string file;
  bool show_cover = false;
  auto* wedge = app.add_subcommand("wedge", "CP cover, curly exterior square and multipliers of a group");
  wedge->add_option("file", file)->required();
  wedge->add_flag("--cover", show_cover, "print the presentations of H and [H,H]");
  wedge->add_flag("--no-timing", no_timing);
  common(wedge);

  auto* b0 = app.add_subcommand("b0", "Bogomolov multiplier by both paths");
  b0->add_option("file", file)->required();

  std::string dir;
  int jobs = 1;
  auto* scan = app.add_subcommand("scan", "divisibility scan over a directory of .pc files");
  scan->add_option("dir", dir)->required();
  scan->add_option("--jobs", jobs)->capture_default_str();
  scan->add_flag("--no-timing", no_timing);
  common(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex) == 0 ? 0 : 2;  // usage errors are input errors
  }
  const EmitOptions emit_opt{!no_timing};

  try {
    if (*basis) {
      const auto t = generate_basis(k, c);
      for (int w = 1; w <= c; ++w) {
        std::cout << "weight " << w << " (" << t.layer_size(w) << "):";
        for (int i = t.layer_begin(w); i < t.layer_end(w); ++i) std::cout << " " << t.render(i);
        std::cout << "\n";
      }
      return 0;
    }
    if (*expand) {
      for (const auto& p : expansion_polynomials(c)) {
        std::cout << p.commutator << "  b =";
        for (const auto& x : p.b) std::cout << " " << x;
        if (n >= 0) std::cout << "  exponent at n=" << n << ": " << p.evaluate(BigInt(n));
        std::cout << "\n";
      }
      return 0;
    }
    if (*table1) {
      const auto r = verify_table1();
      write(emit(r, format_of(format)), out);
      return r.all_match() ? 0 : 1;
    }
    if (*verify) {
      auto sc = parse_suite_case(which);
      if (!sc) throw InputError("unknown suite '" + which + "'");
      auto st = parse_strategy(strategy);
      if (!st) throw InputError("unknown strategy '" + strategy + "'");
      SuiteOptions opt;
      opt.depth = depth;
      opt.budget = budget;
      opt.strategy = *st;
      const auto f = format_of(format);
      const auto r = verify_suite(*sc, e, opt);
      write(emit(r, f, emit_opt), out);
      return r.all_verified() ? 0 : 1;
    }
    if (*wedge) {
      const auto f = format_of(format);
      const auto w = curly_wedge(load(file));
      std::string text = emit(w, f, emit_opt);
      if (show_cover && f == ReportFormat::Text)
        text += "\n" + presentation_to_text(w.cp_cover) + "\n" + presentation_to_text(w.curly_wedge);
      write(text, out);
      return row_from_result(w).status == "ok" ? 0 : 1;
    }
    if (*b0) {
      const auto w = curly_wedge(load(file));
      std::cout << invariants_text(w.b0) << (w.crosscheck ? "" : "  (paths disagree: cover gives " +
                                                                     invariants_text(w.b0_cover) + ")")
                << "\n";
      return w.crosscheck ? 0 : 1;
    }
    if (*scan) {
      if (!std::filesystem::is_directory(dir)) throw InputError("not a directory: " + dir);
      const auto f = format_of(format);
      const auto r = scan_directory(dir, jobs);
      write(emit(r, f, emit_opt), out);
      return r.exit_code();
    }
  } catch (const InputError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
