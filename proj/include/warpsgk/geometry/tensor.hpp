#pragma once

#include "warpsgk/symexpr/expr.hpp"

#include <array>
#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace warpsgk::geometry {

using symexpr::Chart;
using symexpr::Expr;
using symexpr::Point;
using symexpr::Rational;

/// Dense n^rank array, last index fastest.
template <class T>
class Array {
 public:
  Array() = default;
  Array(std::size_t n, std::size_t rank, const T& fill = T()) : n_(n), rank_(rank) {
    std::size_t total = 1;
    for (std::size_t r = 0; r < rank; ++r) total *= n;
    data_.assign(total, fill);
  }

  std::size_t dim() const { return n_; }
  std::size_t rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  template <class... I>
  T& operator()(I... idx) {
    return data_[flat(idx...)];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[flat(idx...)];
  }

  T& at_flat(std::size_t k) { return data_[k]; }
  const T& at_flat(std::size_t k) const { return data_[k]; }
  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  /// Multi-index of flat position k.
  std::vector<std::size_t> unflatten(std::size_t k) const {
    std::vector<std::size_t> idx(rank_);
    for (std::size_t r = rank_; r-- > 0;) {
      idx[r] = k % n_;
      k /= n_;
    }
    return idx;
  }
  std::size_t flatten(const std::vector<std::size_t>& idx) const {
    std::size_t k = 0;
    for (std::size_t i : idx) k = k * n_ + i;
    return k;
  }

 private:
  template <class... I>
  std::size_t flat(I... idx) const {
    static_assert(sizeof...(I) > 0);
    assert(sizeof...(I) == rank_);
    std::size_t k = 0;
    ((k = k * n_ + static_cast<std::size_t>(idx)), ...);
    return k;
  }

  std::size_t n_ = 0;
  std::size_t rank_ = 0;
  std::vector<T> data_;
};

enum class Valence { Scalar, Lower2, Upper2, Mixed12, Lower3, Lower4, Lower5 };
/// SymmetricPair: the first two indices commute. RiemannType: the first four
/// indices carry the algebraic symmetries of a curvature tensor.
enum class SymmetryClass { None, SymmetricPair, RiemannType };

std::string to_string(Valence v);
std::size_t rank_of(Valence v);

/// Symbolic tensor on a chart. For Mixed12 the first index is the upper one.
struct TensorField {
  Chart chart;
  Valence valence = Valence::Lower2;
  SymmetryClass symmetry = SymmetryClass::None;
  Array<Expr> components;

  TensorField() = default;
  TensorField(Chart c, Valence v, SymmetryClass s)
      : chart(std::move(c)), valence(v), symmetry(s), components(chart.dim(), rank_of(v), Expr(0)) {}

  std::size_t dim() const { return chart.dim(); }

  template <class... I>
  Expr& operator()(I... idx) {
    return components(idx...);
  }
  template <class... I>
  const Expr& operator()(I... idx) const {
    return components(idx...);
  }
};

using NumericTensor = Array<Real>;

/// Componentwise evaluation; throws symexpr::SingularPoint.
NumericTensor evaluate(const TensorField& t, const Point& p);

/// Frobenius norm.
Real norm(const NumericTensor& t);

/// Componentwise a - b (same shape required).
TensorField difference(const TensorField& a, const TensorField& b);

/// Aggregated zero test over every component. The verdict is the weakest
/// over components (NonZero beats NumericallyZero beats ProvedZero); the
/// first offending index is kept to localize a failure.
struct TensorZeroReport {
  symexpr::ZeroVerdict verdict = symexpr::ZeroVerdict::ProvedZero;
  std::vector<std::size_t> first_nonzero;  // empty when none
  std::size_t nonzero_count = 0;
  Real max_abs = 0;
  std::optional<Point> witness;
};
TensorZeroReport is_zero(const TensorField& t, const symexpr::SamplingOptions& opts = {});

/// The smallest index tuple in the orbit of idx under the declared symmetry,
/// with the sign relating the two (0 if the orbit forces the component to vanish).
struct Representative {
  std::vector<std::size_t> index;
  int sign = 1;
};
Representative representative(SymmetryClass s, std::vector<std::size_t> idx);

/// Fill every component from its representative; representatives are kept.
void fill_by_symmetry(TensorField& t);

/// Index tuples that are their own representative (the fundamental domain).
std::vector<std::vector<std::size_t>> fundamental_domain(SymmetryClass s, std::size_t n, std::size_t rank);


/// 1-form with symbolic components (Pi, Phi, Psi, Theta, eta).
struct OneFormField {
  Chart chart;
  std::vector<Expr> components;

  OneFormField() = default;
  explicit OneFormField(Chart c) : chart(std::move(c)), components(chart.dim(), Expr(0)) {}
  OneFormField(Chart c, std::vector<Expr> comps);

  std::size_t dim() const { return components.size(); }
  const Expr& operator[](std::size_t i) const { return components.at(i); }
  Expr& operator[](std::size_t i) { return components.at(i); }
};

std::vector<Real> evaluate(const OneFormField& w, const Point& p);

}  // namespace warpsgk::geometry
