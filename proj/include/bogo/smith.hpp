#pragma once
// Smith normal form over Z with unimodular transforms: U A V = D.

#include "bogo/bigint.hpp"

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include <vector>

namespace bogo {

using BigMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;

struct SmithResult {
  std::vector<BigInt> diagonal;  // d_1 | d_2 | ... (length min(rows, cols)), d_i >= 0
  BigMatrix U, U_inverse;        // rows x rows
  BigMatrix V, V_inverse;        // cols x cols
  int rank() const;
};

// With transforms == false only `diagonal` is filled.
SmithResult smith_normal_form(BigMatrix a, bool transforms = false);

// Invariant factors of Z^cols / (row space of a), nontrivial ones only, plus
// the free rank.
struct AbelianInvariants {
  std::vector<BigInt> torsion;  // each > 1, dividing the next
  int free_rank = 0;
  BigInt order() const;         // 0 when infinite
};
AbelianInvariants cokernel_invariants(const BigMatrix& relations_by_row, int cols);

}  // namespace bogo
