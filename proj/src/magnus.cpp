#include "bogo/magnus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace bogo {

TensorShape::TensorShape(int k_, int c_) : k(k_), c(c_) {
  offset.assign(c + 2, 0);
  Eigen::Index p = 1;
  for (int d = 0; d <= c; ++d) {
    offset[d + 1] = offset[d] + p;
    p *= k;
  }
}

LayerSolver::LayerSolver(int d, const std::vector<SparseRow>& lie) : d_(d), lie_(lie) {
  const int n = static_cast<int>(lie.size());
  std::vector<std::map<Eigen::Index, std::int64_t>> rows(n);
  std::vector<std::map<int, std::int64_t>> u(n);
  std::unordered_map<Eigen::Index, std::set<int>> holders;  // word -> rows containing it
  for (int t = 0; t < n; ++t) {
    for (const auto& [w, coef] : lie[t]) {
      rows[t][w] = coef;
      holders[w].insert(t);
    }
    u[t][t] = 1;
  }
  std::vector<char> done(n, 0);
  std::vector<int> pivot_row;
  for (int step = 0; step < n; ++step) {
    long best_cost = -1;
    int bt = -1;
    Eigen::Index bw = 0;
    for (int t = 0; t < n; ++t) {
      if (done[t]) continue;
      for (const auto& [w, coef] : rows[t]) {
        if (coef != 1 && coef != -1) continue;
        long others = 0;
        for (int r : holders[w]) others += !done[r];
        const long cost = static_cast<long>(rows[t].size() - 1) * (others - 1);
        if (bt < 0 || cost < best_cost) {
          best_cost = cost;
          bt = t;
          bw = w;
        }
      }
    }
    if (bt < 0) throw std::logic_error("no unit pivot in Lie layer " + std::to_string(d));
    const std::int64_t sign = rows[bt][bw];
    done[bt] = 1;
    pivot_row.push_back(bt);
    pivot_word_.push_back(bw);
    pivot_sign_.push_back(static_cast<int>(sign));
    const std::vector<int> targets(holders[bw].begin(), holders[bw].end());
    for (int r : targets) {
      if (done[r]) continue;
      const std::int64_t f = rows[r][bw] * sign;
      for (const auto& [w, coef] : rows[bt]) {
        std::int64_t nv = rows[r][w] - f * coef;
        if (nv == 0) {
          rows[r].erase(w);
          holders[w].erase(r);
        } else {
          rows[r][w] = nv;
          holders[w].insert(r);
        }
      }
      for (const auto& [t, coef] : u[bt]) {
        std::int64_t nv = u[r][t] - f * coef;
        if (nv == 0)
          u[r].erase(t);
        else
          u[r][t] = nv;
      }
    }
  }
  above_.assign(n, {});
  transform_.assign(n, {});
  for (int s = 0; s < n; ++s) {
    for (int e = 0; e < s; ++e) {
      auto it = rows[pivot_row[e]].find(pivot_word_[s]);
      if (it != rows[pivot_row[e]].end()) above_[s].emplace_back(e, it->second);
    }
    for (const auto& [t, coef] : u[pivot_row[s]]) transform_[s].emplace_back(t, coef);
  }
}

MagnusBasis::MagnusBasis(FreeNilpotentPtr group)
    : group_(std::move(group)), shape_(group_->generator_count(), group_->class_bound()) {
  const BasisTable& basis = group_->basis();
  images_.reserve(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    const BasisEntry& e = basis[i];
    if (e.left < 0)
      images_.push_back(TensorSeries<BigInt>::letter(&shape_, e.expr.generator));
    else
      images_.push_back(comm(images_[e.left], images_[e.right]));
  }
  for (const auto& x : images_) inverses_.push_back(inv(x));
  for (const auto& x : images_) images64_.push_back(x.cast<std::int64_t>(&shape_));
  for (const auto& x : inverses_) inverses64_.push_back(x.cast<std::int64_t>(&shape_));
  for (const auto& x : images_) images128_.push_back(x.cast<Int128>(&shape_));
  for (const auto& x : images_) {
    std::vector<std::pair<Eigen::Index, std::int64_t>> sp;
    for (Eigen::Index w = 1; w < x.coeffs().size(); ++w)
      if (x.coeffs()[w] != 0) sp.emplace_back(w, static_cast<std::int64_t>(x.coeffs()[w]));
    sparse_.push_back(std::move(sp));
  }
  for (const auto& x : inverses_) inverses128_.push_back(x.cast<Int128>(&shape_));
  solvers_.resize(shape_.c + 1);
  for (int d = 1; d <= shape_.c; ++d) {
    std::vector<std::vector<std::pair<Eigen::Index, std::int64_t>>> lie;
    for (int i = basis.layer_begin(d); i < basis.layer_end(d); ++i) {
      const auto blk = images_[i].block(d);
      std::vector<std::pair<Eigen::Index, std::int64_t>> p;
      for (Eigen::Index w = 0; w < blk.size(); ++w)
        if (blk[w] != 0) p.emplace_back(w, static_cast<std::int64_t>(blk[w]));
      lie.push_back(std::move(p));
    }
    solvers_[d] = LayerSolver(d, lie);
  }
}

}  // namespace bogo
