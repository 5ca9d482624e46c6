#include "warpsgk/geometry/tensor.hpp"

#include <algorithm>

namespace warpsgk::geometry {

std::string to_string(Valence v) {
  switch (v) {
    case Valence::Scalar:
      return "scalar";
    case Valence::Lower2:
      return "(0,2)";
    case Valence::Upper2:
      return "(2,0)";
    case Valence::Mixed12:
      return "(1,2)";
    case Valence::Lower3:
      return "(0,3)";
    case Valence::Lower4:
      return "(0,4)";
    case Valence::Lower5:
      return "(0,5)";
  }
  return {};
}

std::size_t rank_of(Valence v) {
  switch (v) {
    case Valence::Scalar:
      return 0;
    case Valence::Lower2:
    case Valence::Upper2:
      return 2;
    case Valence::Mixed12:
    case Valence::Lower3:
      return 3;
    case Valence::Lower4:
      return 4;
    case Valence::Lower5:
      return 5;
  }
  return 0;
}

NumericTensor evaluate(const TensorField& t, const Point& p) {
  NumericTensor out(t.dim(), t.components.rank(), Real(0));
  for (std::size_t k = 0; k < t.components.size(); ++k) {
    const Expr& e = t.components.at_flat(k);
    if (!e.is_zero_constant()) out.at_flat(k) = symexpr::evaluate(e, p);
  }
  return out;
}

Real norm(const NumericTensor& t) {
  Real s = 0;
  for (const Real& x : t.data()) s += x * x;
  return boost::multiprecision::sqrt(s);
}

TensorField difference(const TensorField& a, const TensorField& b) {
  if (a.components.size() != b.components.size() || a.dim() != b.dim())
    throw std::invalid_argument("tensor shape mismatch");
  TensorField out(a.chart, a.valence, SymmetryClass::None);
  for (std::size_t k = 0; k < a.components.size(); ++k)
    out.components.at_flat(k) = a.components.at_flat(k) - b.components.at_flat(k);
  return out;
}

TensorZeroReport is_zero(const TensorField& t, const symexpr::SamplingOptions& opts) {
  using symexpr::ZeroVerdict;
  TensorZeroReport rep;
  for (std::size_t k = 0; k < t.components.size(); ++k) {
    const Expr& e = t.components.at_flat(k);
    if (e.is_zero_constant()) continue;
    const symexpr::ZeroTest z = symexpr::is_zero(e, opts);
    if (z.max_abs > rep.max_abs) rep.max_abs = z.max_abs;
    if (z.verdict == ZeroVerdict::ProvedZero) continue;
    if (z.verdict == ZeroVerdict::NumericallyZero) {
      if (rep.verdict == ZeroVerdict::ProvedZero) rep.verdict = ZeroVerdict::NumericallyZero;
      continue;
    }
    if (rep.verdict != ZeroVerdict::NonZero) {
      rep.first_nonzero = t.components.unflatten(k);
      rep.witness = z.witness;
    }
    rep.verdict = ZeroVerdict::NonZero;
    ++rep.nonzero_count;
  }
  return rep;
}

Representative representative(SymmetryClass s, std::vector<std::size_t> idx) {
  Representative r;
  switch (s) {
    case SymmetryClass::None:
      break;
    case SymmetryClass::SymmetricPair: {
      if (idx.size() >= 2 && idx[0] > idx[1]) std::swap(idx[0], idx[1]);
      break;
    }
    case SymmetryClass::RiemannType: {
      if (idx[0] == idx[1] || idx[2] == idx[3]) {
        r.sign = 0;
        break;
      }
      if (idx[0] > idx[1]) {
        std::swap(idx[0], idx[1]);
        r.sign = -r.sign;
      }
      if (idx[2] > idx[3]) {
        std::swap(idx[2], idx[3]);
        r.sign = -r.sign;
      }
      if (std::make_pair(idx[0], idx[1]) > std::make_pair(idx[2], idx[3])) {
        std::swap(idx[0], idx[2]);
        std::swap(idx[1], idx[3]);
      }
      break;
    }
  }
  r.index = std::move(idx);
  return r;
}

void fill_by_symmetry(TensorField& t) {
  if (t.symmetry == SymmetryClass::None) return;
  for (std::size_t k = 0; k < t.components.size(); ++k) {
    const auto idx = t.components.unflatten(k);
    const Representative r = representative(t.symmetry, idx);
    if (r.sign == 0) {
      t.components.at_flat(k) = Expr(0);
      continue;
    }
    const std::size_t rk = t.components.flatten(r.index);
    if (rk == k) continue;
    const Expr& src = t.components.at_flat(rk);
    t.components.at_flat(k) = r.sign > 0 ? src : -src;
  }
}

std::vector<std::vector<std::size_t>> fundamental_domain(SymmetryClass s, std::size_t n, std::size_t rank) {
  Array<char> shape(n, rank, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    auto idx = shape.unflatten(k);
    const Representative r = representative(s, idx);
    if (r.sign != 0 && r.index == idx) out.push_back(std::move(idx));
  }
  return out;
}


OneFormField::OneFormField(Chart c, std::vector<Expr> comps) : chart(std::move(c)), components(std::move(comps)) {
  if (components.size() != chart.dim())
    throw std::invalid_argument("1-form has " + std::to_string(components.size()) + " components on a " +
                                std::to_string(chart.dim()) + "-dimensional chart");
}

std::vector<Real> evaluate(const OneFormField& w, const Point& p) {
  std::vector<Real> out;
  out.reserve(w.dim());
  for (const Expr& e : w.components) out.push_back(symexpr::evaluate(e, p));
  return out;
}

}  // namespace warpsgk::geometry
