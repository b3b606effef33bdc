#include "bogo/smith.hpp"

#include <algorithm>

namespace bogo {

namespace {

// Elementary operations mirrored on the transforms.  Row ops act on A and U
// (U <- E U, U^{-1} <- U^{-1} E^{-1}); column ops on A and V likewise.
struct Smith {
  BigMatrix a, u, ui, v, vi;
  bool tr;

  void row_combine(Eigen::Index i, Eigen::Index j, const BigInt& s, const BigInt& t,
                   const BigInt& p, const BigInt& q) {
    // [row_i; row_j] <- [[s,t],[p,q]] [row_i; row_j], determinant 1
    auto mix = [&](BigMatrix& m) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        BigInt x = m(i, c), y = m(j, c);
        if (x == 0 && y == 0) continue;
        m(i, c) = s * x + t * y;
        m(j, c) = p * x + q * y;
      }
    };
    mix(a);
    if (!tr) return;
    mix(u);
    // inverse [[q,-t],[-p,s]] applied on the right of U^{-1}
    for (Eigen::Index r = 0; r < ui.rows(); ++r) {
      BigInt x = ui(r, i), y = ui(r, j);
      if (x == 0 && y == 0) continue;
      ui(r, i) = x * q - y * p;
      ui(r, j) = -x * t + y * s;
    }
  }
  void col_combine(Eigen::Index i, Eigen::Index j, const BigInt& s, const BigInt& t,
                   const BigInt& p, const BigInt& q) {
    // [col_i, col_j] <- [col_i, col_j] [[s,p],[t,q]]
    auto mix = [&](BigMatrix& m) {
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        BigInt x = m(r, i), y = m(r, j);
        if (x == 0 && y == 0) continue;
        m(r, i) = s * x + t * y;
        m(r, j) = p * x + q * y;
      }
    };
    mix(a);
    if (!tr) return;
    mix(v);
    for (Eigen::Index c = 0; c < vi.cols(); ++c) {
      BigInt x = vi(i, c), y = vi(j, c);
      if (x == 0 && y == 0) continue;
      vi(i, c) = x * q - y * p;
      vi(j, c) = -x * t + y * s;
    }
  }
  void swap_rows(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.row(i).swap(a.row(j));
    if (!tr) return;
    u.row(i).swap(u.row(j));
    ui.col(i).swap(ui.col(j));
  }
  void swap_cols(Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    a.col(i).swap(a.col(j));
    if (!tr) return;
    v.col(i).swap(v.col(j));
    vi.row(i).swap(vi.row(j));
  }
  void negate_row(Eigen::Index i) {
    a.row(i) *= BigInt(-1);
    if (!tr) return;
    u.row(i) *= BigInt(-1);
    ui.col(i) *= BigInt(-1);
  }

  // Clears column k below (k,k) and row k right of (k,k).
  void clear_cross(Eigen::Index k) {
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (Eigen::Index i = k + 1; i < a.rows(); ++i) {
        if (a(i, k) == 0) continue;
        const BigInt x = a(k, k), y = a(i, k);
        if (x != 0 && y % x == 0) {
          row_combine(k, i, 1, 0, -(y / x), 1);
        } else {
          auto [g, s, t] = ext_gcd(x, y);
          row_combine(k, i, s, t, -(y / g), x / g);
        }
        dirty = true;
      }
      for (Eigen::Index j = k + 1; j < a.cols(); ++j) {
        if (a(k, j) == 0) continue;
        const BigInt x = a(k, k), y = a(k, j);
        if (x != 0 && y % x == 0) {
          col_combine(k, j, 1, 0, -(y / x), 1);
        } else {
          auto [g, s, t] = ext_gcd(x, y);
          col_combine(k, j, s, t, -(y / g), x / g);
        }
        dirty = true;
      }
      if (dirty) {
        // Row work may have refilled the column; loop until both are clear.
        bool clear = true;
        for (Eigen::Index i = k + 1; i < a.rows() && clear; ++i) clear = a(i, k) == 0;
        dirty = !clear;
      }
    }
  }
};

}  // namespace

int SmithResult::rank() const {
  return static_cast<int>(std::count_if(diagonal.begin(), diagonal.end(),
                                        [](const BigInt& d) { return d != 0; }));
}

SmithResult smith_normal_form(BigMatrix a, bool transforms) {
  const Eigen::Index m = a.rows(), n = a.cols();
  Smith s{std::move(a), {}, {}, {}, {}, transforms};
  if (transforms) {
    s.u = BigMatrix::Identity(m, m);
    s.ui = BigMatrix::Identity(m, m);
    s.v = BigMatrix::Identity(n, n);
    s.vi = BigMatrix::Identity(n, n);
  }
  const Eigen::Index r = std::min(m, n);
  for (Eigen::Index k = 0; k < r; ++k) {
    for (;;) {
      // pivot: smallest nonzero magnitude in the trailing block
      Eigen::Index pi = -1, pj = -1;
      BigInt best;
      for (Eigen::Index j = k; j < n; ++j)
        for (Eigen::Index i = k; i < m; ++i) {
          const BigInt& x = s.a(i, j);
          if (x == 0) continue;
          BigInt ax = abs(x);
          if (pi < 0 || ax < best) {
            best = ax;
            pi = i;
            pj = j;
            if (best == 1) break;
          }
        }
      if (pi < 0) break;
      s.swap_rows(k, pi);
      s.swap_cols(k, pj);
      s.clear_cross(k);
      // divisibility: fold a non-multiple into row k and repeat
      Eigen::Index bad_row = -1;
      for (Eigen::Index i = k + 1; i < m && bad_row < 0; ++i)
        for (Eigen::Index j = k + 1; j < n; ++j)
          if (s.a(i, j) % s.a(k, k) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;
      s.row_combine(k, bad_row, 1, 1, 0, 1);
    }
    if (s.a(k, k) < 0) s.negate_row(k);
  }
  SmithResult out;
  for (Eigen::Index k = 0; k < r; ++k) out.diagonal.push_back(s.a(k, k));
  if (transforms) {
    out.U = std::move(s.u);
    out.U_inverse = std::move(s.ui);
    out.V = std::move(s.v);
    out.V_inverse = std::move(s.vi);
  }
  return out;
}

BigInt AbelianInvariants::order() const {
  if (free_rank > 0) return 0;
  BigInt o = 1;
  for (const auto& t : torsion) o *= t;
  return o;
}

AbelianInvariants cokernel_invariants(const BigMatrix& relations_by_row, int cols) {
  AbelianInvariants inv;
  if (relations_by_row.rows() == 0) {
    inv.free_rank = cols;
    return inv;
  }
  SmithResult snf = smith_normal_form(relations_by_row, false);
  int nonzero = 0;
  for (const auto& d : snf.diagonal) {
    if (d == 0) continue;
    ++nonzero;
    if (d != 1) inv.torsion.push_back(d);
  }
  inv.free_rank = cols - nonzero;
  return inv;
}

}  // namespace bogo
