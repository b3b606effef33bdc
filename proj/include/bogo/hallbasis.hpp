#pragma once
// Basic commutators (Marshall Hall basis) of weight <= c on k generators.
//
// A bracket (u,v) is basic when u > v in the basis order and, if u = (u1,u2),
// u2 <= v.  Within a weight the order is lexicographic in (index u, index v);
// for two generators this is exactly the ordering used by the classical
// (ab)^n coefficient table.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bogo {

// A bracketing of generators.  Either a generator (generator >= 0) or a pair.
struct BasicCommutator {
  int generator = -1;
  std::shared_ptr<const BasicCommutator> left;
  std::shared_ptr<const BasicCommutator> right;
  int weight = 1;

  static BasicCommutator gen(int i);
  static BasicCommutator bracket(const BasicCommutator& u, const BasicCommutator& v);
  bool is_generator() const { return generator >= 0; }
};

struct BasisEntry {
  BasicCommutator expr;
  int left = -1;   // basis index of u, or -1 for a generator
  int right = -1;  // basis index of v
  int weight = 1;
};

class BasisTable {
 public:
  BasisTable() = default;

  int generator_count() const { return k_; }
  int class_bound() const { return c_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const BasisEntry& operator[](int i) const { return entries_[i]; }
  const std::vector<BasisEntry>& entries() const { return entries_; }

  int weight(int i) const { return entries_[i].weight; }
  // First basis index of the given weight, and one past the last.
  int layer_begin(int w) const { return layer_start_[w]; }
  int layer_end(int w) const { return layer_start_[w + 1]; }
  int layer_size(int w) const { return layer_end(w) - layer_begin(w); }

  // Index of the basic pair (u,v), if (u,v) is basic and of weight <= c.
  std::optional<int> pair_index(int u, int v) const;
  // Basis index of an arbitrary bracket, if it is basic.
  std::optional<int> index_of(const BasicCommutator& x) const;

  const std::string& render(int i) const { return rendered_[i]; }
  std::optional<int> find(const std::string& rendered) const;

  std::string generator_name(int g) const;

 private:
  friend BasisTable generate_basis(int k, int c);
  int k_ = 0;
  int c_ = 0;
  std::vector<BasisEntry> entries_;
  std::vector<int> layer_start_;
  std::map<std::pair<int, int>, int> pairs_;
  std::vector<std::string> rendered_;
  std::map<std::string, int> by_name_;
};

// Throws std::invalid_argument for k == 0 or c == 0.
BasisTable generate_basis(int k, int c);

bool is_basic(const BasicCommutator& candidate, const BasisTable& table);

// Witt's formula (1/w) sum_{d|w} mu(d) k^{w/d}.
long long witt_number(int k, int w);

// Left-normed shorthand: ((b,a),a) -> "[b,a,a]".
std::string render(const BasicCommutator& x, const BasisTable& table);

// Parses the bracket shorthand ("a", "[b,a,b,[b,a,a]]") over the table's
// generator names.  Throws std::invalid_argument on malformed input.
BasicCommutator parse_commutator(const std::string& text, const BasisTable& table);

}  // namespace bogo
