#pragma once
// Magnus embedding of the free nilpotent group F(k,c) into the units of the
// truncated free associative ring Z<X_1..X_k>/(degree > c), x_i -> 1 + X_i.
// The embedding is faithful, so it gives a second, independent arithmetic for
// F(k,c): products are polynomial multiplications instead of collection.
//
// Series are dense, templated on the scalar.  std::int64_t is the fast path,
// __int128 the middle tier; fixed-width operations are range-guarded and throw
// ScalarOverflow, after which callers redo the work at the next width
// (finally BigInt).

#include "bogo/bigint.hpp"
#include "bogo/nilfree.hpp"

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace Eigen {
template <>
struct NumTraits<__int128> : GenericNumTraits<long long> {
  using Real = __int128;
  using NonInteger = double;
  using Nested = __int128;
  using Literal = __int128;
  static inline __int128 highest() { return (~static_cast<unsigned __int128>(0)) >> 1; }
  static inline __int128 lowest() { return -highest() - 1; }
  static inline __int128 epsilon() { return 0; }
  static inline __int128 dummy_precision() { return 0; }
  enum { IsInteger = 1, IsSigned = 1, IsComplex = 0, RequireInitialization = 0,
         ReadCost = 2, AddCost = 2, MulCost = 4 };
};
}  // namespace Eigen

namespace bogo {

struct ScalarOverflow : std::overflow_error {
  ScalarOverflow() : std::overflow_error("int64 range exceeded in Magnus arithmetic") {}
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<std::int64_t> {
  static constexpr bool exact_unbounded = false;
  static constexpr long double limit = 4.0e18L;
  static long double magnitude(std::int64_t x) { return std::fabs(static_cast<long double>(x)); }
  static std::int64_t from_big(const BigInt& x) {
    if (!fits_int64(x)) throw ScalarOverflow();
    return static_cast<std::int64_t>(x);
  }
  static BigInt to_big(std::int64_t x) { return BigInt(x); }
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ScalarOverflow();
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ScalarOverflow();
    return r;
  }
};

using Int128 = __int128;

template <>
struct ScalarTraits<Int128> {
  static constexpr bool exact_unbounded = false;
  static constexpr long double limit = 1.0e37L;
  static long double magnitude(Int128 x) { return std::fabs(static_cast<long double>(x)); }
  static Int128 from_big(const BigInt& x) {
    static const BigInt hi = (BigInt(1) << 126);
    if (x >= hi || x <= -hi) throw ScalarOverflow();
    return static_cast<Int128>(x);
  }
  static BigInt to_big(Int128 x) { return BigInt(x); }
  static Int128 mul(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw ScalarOverflow();
    return r;
  }
  static Int128 add(Int128 a, Int128 b) {
    Int128 r;
    if (__builtin_add_overflow(a, b, &r)) throw ScalarOverflow();
    return r;
  }
};

template <>
struct ScalarTraits<BigInt> {
  static constexpr bool exact_unbounded = true;
  static constexpr long double limit = 0;
  static long double magnitude(const BigInt&) { return 0; }
  static BigInt from_big(const BigInt& x) { return x; }
  static BigInt to_big(const BigInt& x) { return x; }
  static BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
  static BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
};

// Words of degree d over k letters are indexed in base k, first letter most
// significant, so numeric order within a degree block is lexicographic order.
struct TensorShape {
  int k = 0;
  int c = 0;
  std::vector<Eigen::Index> offset;  // offset[d] .. offset[d+1] holds degree d

  TensorShape() = default;
  TensorShape(int k_, int c_);
  Eigen::Index begin(int d) const { return offset[d]; }
  Eigen::Index block(int d) const { return offset[d + 1] - offset[d]; }
  Eigen::Index size() const { return offset[c + 1]; }
};

template <class S>
using SeriesVec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// A group element 1 + (terms of degree >= 1).
template <class S>
class TensorSeries {
 public:
  using Vec = SeriesVec<S>;
  using Traits = ScalarTraits<S>;

  TensorSeries() = default;
  explicit TensorSeries(const TensorShape* shape) : shape_(shape), v_(Vec::Zero(shape->size())) {
    v_[0] = S(1);
  }

  static TensorSeries one(const TensorShape* shape) { return TensorSeries(shape); }
  static TensorSeries letter(const TensorShape* shape, int i) {
    TensorSeries x(shape);
    if (shape->c >= 1) x.v_[shape->begin(1) + i] = S(1);
    return x;
  }

  const TensorShape* shape() const { return shape_; }
  const Vec& coeffs() const { return v_; }
  Vec& coeffs() { return v_; }
  auto block(int d) const { return v_.segment(shape_->begin(d), shape_->block(d)); }
  auto block(int d) { return v_.segment(shape_->begin(d), shape_->block(d)); }

  // Lowest degree >= 1 with a nonzero coefficient; c+1 for the identity.
  int valuation() const {
    for (int d = 1; d <= shape_->c; ++d)
      if (!block(d).isZero()) return d;
    return shape_->c + 1;
  }
  bool is_one() const { return valuation() > shape_->c; }

  long double max_magnitude(int from_degree = 1) const {
    if constexpr (Traits::exact_unbounded) {
      return 0;
    } else {
      long double m = 0;
      for (Eigen::Index i = shape_->begin(from_degree); i < v_.size(); ++i)
        m = std::max(m, Traits::magnitude(v_[i]));
      return m;
    }
  }

  friend bool operator==(const TensorSeries& a, const TensorSeries& b) { return a.v_ == b.v_; }

  template <class T>
  TensorSeries<T> cast(const TensorShape* shape) const {
    TensorSeries<T> r(shape);
    for (Eigen::Index i = 0; i < v_.size(); ++i)
      r.coeffs()[i] = ScalarTraits<T>::from_big(Traits::to_big(v_[i]));
    return r;
  }

 private:
  const TensorShape* shape_ = nullptr;
  Vec v_;
};

namespace magnus_detail {

// acc += x' * y' restricted to degrees x' >= vx, y' >= vy (degree-0 parts excluded).
template <class S>
void add_product(SeriesVec<S>& acc, const TensorShape& sh, const SeriesVec<S>& x, int vx,
                 const SeriesVec<S>& y, int vy) {
  using RowMat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  if constexpr (!ScalarTraits<S>::exact_unbounded) {
    long double mx = 0, my = 0, ma = 0;
    for (Eigen::Index i = sh.begin(vx); i < x.size(); ++i) mx = std::max(mx, std::fabs((long double)x[i]));
    for (Eigen::Index i = sh.begin(vy); i < y.size(); ++i) my = std::max(my, std::fabs((long double)y[i]));
    for (Eigen::Index i = 0; i < acc.size(); ++i) ma = std::max(ma, std::fabs((long double)acc[i]));
    if (ma + sh.c * mx * my > ScalarTraits<S>::limit) throw ScalarOverflow();
  }
  for (int d1 = vx; d1 + vy <= sh.c; ++d1) {
    auto xa = x.segment(sh.begin(d1), sh.block(d1));
    if (xa.isZero()) continue;
    for (int d2 = vy; d1 + d2 <= sh.c; ++d2) {
      auto yb = y.segment(sh.begin(d2), sh.block(d2));
      Eigen::Map<RowMat> out(acc.data() + sh.begin(d1 + d2), sh.block(d1), sh.block(d2));
      out.noalias() += xa * yb.transpose();
    }
  }
}

template <class S>
void add_scaled(SeriesVec<S>& acc, const SeriesVec<S>& x, const S& f) {
  if constexpr (!ScalarTraits<S>::exact_unbounded) {
    long double mx = 0, ma = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) mx = std::max(mx, std::fabs((long double)x[i]));
    for (Eigen::Index i = 0; i < acc.size(); ++i) ma = std::max(ma, std::fabs((long double)acc[i]));
    if (ma + mx * std::fabs((long double)f) > ScalarTraits<S>::limit) throw ScalarOverflow();
  }
  acc.noalias() += f * x;
}

}  // namespace magnus_detail

template <class S>
TensorSeries<S> mul(const TensorSeries<S>& a, const TensorSeries<S>& b) {
  const TensorShape& sh = *a.shape();
  const int va = a.valuation(), vb = b.valuation();
  TensorSeries<S> r(a.shape());
  r.coeffs() = a.coeffs() + b.coeffs();
  r.coeffs()[0] = S(1);
  if (va + vb <= sh.c) magnus_detail::add_product(r.coeffs(), sh, a.coeffs(), va, b.coeffs(), vb);
  return r;
}

// (1 + A)^n = sum_m C(n,m) A^m, valid for every integer n.
template <class S>
TensorSeries<S> pow(const TensorSeries<S>& a, const BigInt& n) {
  const TensorShape& sh = *a.shape();
  const int va = a.valuation();
  TensorSeries<S> r(a.shape());
  if (n == 0 || va > sh.c) return r;
  SeriesVec<S> term = a.coeffs();
  term[0] = S(0);
  magnus_detail::add_scaled(r.coeffs(), term, ScalarTraits<S>::from_big(n));
  for (int m = 2; m * va <= sh.c; ++m) {
    SeriesVec<S> next = SeriesVec<S>::Zero(term.size());
    magnus_detail::add_product(next, sh, term, (m - 1) * va, a.coeffs(), va);
    term.swap(next);
    BigInt cm = binomial(n, m);
    if (cm != 0) magnus_detail::add_scaled(r.coeffs(), term, ScalarTraits<S>::from_big(cm));
  }
  return r;
}

template <class S>
TensorSeries<S> inv(const TensorSeries<S>& a) {
  return pow(a, BigInt(-1));
}

template <class S>
TensorSeries<S> comm(const TensorSeries<S>& a, const TensorSeries<S>& b) {
  return mul(inv(mul(b, a)), mul(a, b));
}

// g * h^q; additive (g + q(h - 1)) when the cross terms vanish.
template <class S>
TensorSeries<S> mul_pow(const TensorSeries<S>& g, const TensorSeries<S>& h, const BigInt& q) {
  const int vh = h.valuation();
  const TensorShape& sh = *g.shape();
  if (2 * vh > sh.c && g.valuation() + vh > sh.c) {
    TensorSeries<S> r = g;
    SeriesVec<S> hp = h.coeffs();
    hp[0] = S(0);
    magnus_detail::add_scaled(r.coeffs(), hp, ScalarTraits<S>::from_big(q));
    return r;
  }
  return mul(g, pow(h, q));
}

// Per-layer linear algebra: the degree-d part of an element of gamma_d is
// sum_t x_t P_t over the basic commutators of weight d, P_t the Lie element of
// c_t.  Unit-pivot row elimination E = U P (greedy, fill-minimising) leaves an
// echelon system on the pivot words; forward substitution gives y with
// v = y E, and x = U^T y.
class LayerSolver {
 public:
  using SparseRow = std::vector<std::pair<Eigen::Index, std::int64_t>>;

  LayerSolver() = default;
  LayerSolver(int d, const std::vector<SparseRow>& lie);

  int layer() const { return d_; }
  int size() const { return static_cast<int>(lie_.size()); }

  // x[t] is the exponent of basis index layer_begin(d) + t.
  template <class S>
  std::vector<S> solve(const Eigen::Ref<const SeriesVec<S>>& block) const {
    using T = ScalarTraits<S>;
    const std::size_t n = pivot_word_.size();
    std::vector<S> y(n, S(0));
    for (std::size_t s = 0; s < n; ++s) {
      S v = block[pivot_word_[s]];
      for (const auto& [t, coef] : above_[s])
        if (y[t] != S(0)) v = T::add(v, T::mul(y[t], S(-coef)));
      y[s] = pivot_sign_[s] == 1 ? v : S(-v);
    }
    std::vector<S> x(lie_.size(), S(0));
    for (std::size_t s = 0; s < n; ++s) {
      if (y[s] == S(0)) continue;
      for (const auto& [t, coef] : transform_[s]) x[t] = T::add(x[t], T::mul(y[s], S(coef)));
    }
    return x;
  }

  const SparseRow& lie(int t) const { return lie_[t]; }

 private:
  int d_ = 0;
  std::vector<Eigen::Index> pivot_word_;
  std::vector<int> pivot_sign_;
  std::vector<std::vector<std::pair<int, std::int64_t>>> above_;      // (earlier step, E coefficient)
  std::vector<std::vector<std::pair<int, std::int64_t>>> transform_;  // rows of U
  std::vector<SparseRow> lie_;
};

// Magnus images of the Hall basis together with the layer solvers.
class MagnusBasis {
 public:
  explicit MagnusBasis(FreeNilpotentPtr group);

  const FreeNilpotentGroup& group() const { return *group_; }
  const FreeNilpotentPtr& group_ptr() const { return group_; }
  const TensorShape* shape() const { return &shape_; }
  const LayerSolver& solver(int d) const { return solvers_[d]; }

  template <class S>
  const TensorSeries<S>& image(int i) const {
    if constexpr (std::is_same_v<S, BigInt>)
      return images_[i];
    else if constexpr (std::is_same_v<S, Int128>)
      return images128_[i];
    else
      return images64_[i];
  }
  template <class S>
  const TensorSeries<S>& image_inverse(int i) const {
    if constexpr (std::is_same_v<S, BigInt>)
      return inverses_[i];
    else if constexpr (std::is_same_v<S, Int128>)
      return inverses128_[i];
    else
      return inverses64_[i];
  }

  // Nonzero coefficients of image(i) - 1.
  const std::vector<std::pair<Eigen::Index, std::int64_t>>& sparse_image(int i) const {
    return sparse_[i];
  }

  template <class S>
  TensorSeries<S> from_word(const NormalWord& w) const {
    TensorSeries<S> r(&shape_);
    for (const auto& [i, e] : w.syllables()) r = mul(r, pow(image<S>(i), e));
    return r;
  }

  // Exponents of the basic commutators of weight d in an element of gamma_d.
  template <class S>
  std::vector<S> layer_coords(const TensorSeries<S>& g, int d) const {
    return solvers_[d].template solve<S>(g.block(d));
  }

  template <class S>
  NormalWord to_word(TensorSeries<S> g) const {
    const BasisTable& basis = group_->basis();
    Syllables out;
    for (int d = 1; d <= shape_.c; ++d) {
      if (g.block(d).isZero()) continue;
      std::vector<S> x = layer_coords(g, d);
      TensorSeries<S> lead(&shape_);
      for (int t = 0; t < static_cast<int>(x.size()); ++t) {
        if (x[t] == S(0)) continue;
        const int idx = basis.layer_begin(d) + t;
        out.emplace_back(idx, ScalarTraits<S>::to_big(x[t]));
        lead = mul(lead, pow(image<S>(idx), ScalarTraits<S>::to_big(x[t])));
      }
      g = mul(inv(lead), g);
      if (!g.block(d).isZero()) throw std::logic_error("Magnus layer did not cancel");
    }
    return NormalWord(group_.get(), std::move(out));
  }

 private:
  FreeNilpotentPtr group_;
  TensorShape shape_;
  std::vector<TensorSeries<BigInt>> images_, inverses_;
  std::vector<TensorSeries<std::int64_t>> images64_, inverses64_;
  std::vector<TensorSeries<Int128>> images128_, inverses128_;
  std::vector<std::vector<std::pair<Eigen::Index, std::int64_t>>> sparse_;
  std::vector<LayerSolver> solvers_;
};

// Adaptor for the generic expression evaluator.
template <class S>
struct MagnusOps {
  using Elem = TensorSeries<S>;
  const TensorShape* shape;
  Elem identity() const { return Elem(shape); }
  Elem mul(const Elem& a, const Elem& b) const { return bogo::mul(a, b); }
  Elem inv(const Elem& a) const { return bogo::inv(a); }
  Elem pow(const Elem& a, const BigInt& n) const { return bogo::pow(a, n); }
  Elem comm(const Elem& a, const Elem& b) const { return bogo::comm(a, b); }
};

}  // namespace bogo
