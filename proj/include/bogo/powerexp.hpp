#pragma once
// Hall's power expansion for two generators: in the collected form of (ab)^n
// the exponent of the basic commutator c_i of weight r is
//   n_i(n) = sum_{j=1..r} b_j C(n,j)
// with non-negative integers b_j independent of n.

#include "bogo/bigint.hpp"
#include "bogo/nilfree.hpp"

#include <map>
#include <string>
#include <vector>

namespace bogo {

struct ExpansionPolynomial {
  int basis_index = 0;
  std::string commutator;       // rendered, e.g. "[b,a,b]"
  int weight = 1;
  std::vector<BigInt> b;        // b[0] = b_1, ..., b[r-1] = b_r

  BigInt evaluate(const BigInt& n) const;
};

// Solves the b-vectors from (ab)^n, n = first_n .. first_n + c - 1.
// first_n = 1 is the triangular forward substitution; any other start solves
// the (still nonsingular) binomial system exactly.
std::vector<ExpansionPolynomial> expansion_polynomials(const FreeNilpotentGroup& g, int first_n = 1);
std::vector<ExpansionPolynomial> expansion_polynomials(int c);

struct Table1Row {
  std::string commutator;
  std::vector<BigInt> expected;  // b_1..b_r
  std::vector<BigInt> computed;
  bool match = false;
};

struct MatchReport {
  std::vector<Table1Row> rows;
  int matched = 0;
  bool all_match() const { return matched == static_cast<int>(rows.size()) && !rows.empty(); }
};

// The 23-row golden table keyed by rendered commutator (b_1..b_r each).
const std::vector<std::pair<std::string, std::vector<int>>>& table1_fixture();

MatchReport verify_table1(const FreeNilpotentGroup& g);
MatchReport verify_table1();

}  // namespace bogo
