// Writes the bundled catalog: one .pc file per isomorphism class of p-group,
// annotated with order, Bogomolov multiplier (only when both computation
// paths agree) and hypothesis tags.
//
//   gen_catalog <outdir> [--max-exp2 6] [--max-exp3 3] [--max-exp5 2] [--max-exp7 2]

#include "bogo/catalog.hpp"
#include "bogo/wedge.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

using namespace bogo;

namespace {

std::string padded(int i, int width) {
  std::string s = std::to_string(i);
  return std::string(width - std::min<int>(width, s.size()), '0') + s;
}

bool write_entry(const std::filesystem::path& dir, const std::string& name, PcPresentation g) {
  g.set_name(name);
  const auto w = curly_wedge(g);
  if (!w.crosscheck) {
    std::cerr << name << ": B0 paths disagree, not written\n";
    return false;
  }
  std::ofstream f(dir / (name + ".pc"));
  f << "#@ order " << w.group_order << "\n";
  f << "#@ b0 " << invariants_text(w.b0) << "\n";
  f << "#@ tags";
  for (std::size_t i = 0; i < w.tags.size(); ++i) f << (i ? "," : " ") << w.tags[i];
  f << "\n" << presentation_to_text(g);
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate the p-group catalog"};
  std::string out;
  std::map<int, int> max_exp = {{2, 6}, {3, 3}, {5, 2}, {7, 2}};
  app.add_option("outdir", out)->required();
  for (auto& [p, n] : max_exp)
    app.add_option("--max-exp" + std::to_string(p), n)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::filesystem::create_directories(out);
  int written = 0, failed = 0;
  write_entry(out, "order1", PcPresentation({}, "order1")) ? ++written : ++failed;
  for (const auto& [p, top] : max_exp) {
    const auto levels = p_groups_up_to(p, top);
    BigInt q = 1;
    for (int m = 1; m <= top; ++m) {
      q *= p;
      const int width = levels[m].size() >= 100 ? 3 : 2;
      for (std::size_t i = 0; i < levels[m].size(); ++i) {
        const std::string name = "order" + q.str() + "_" + padded(static_cast<int>(i) + 1, width);
        write_entry(out, name, levels[m][i]) ? ++written : ++failed;
      }
      std::cerr << "order " << q << ": " << levels[m].size() << " classes\n";
    }
  }
  std::cerr << written << " files written to " << out << ", " << failed << " skipped\n";
  return failed == 0 ? 0 : 1;
}
