#pragma once

#include "warpsgk/geometry/tensor.hpp"

namespace warpsgk::knproducts {

using geometry::Array;
using geometry::NumericTensor;
using geometry::OneFormField;
using geometry::TensorField;

/// (A∧E)_ijkl = A_il E_jk + A_jk E_il - A_ik E_jl - A_jl E_ik for symmetric
/// (0,2) arrays of any scalar type.
template <class T>
Array<T> kulkarni_nomizu(const Array<T>& A, const Array<T>& E) {
  const std::size_t n = A.dim();
  Array<T> out(n, 4, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          if (std::make_pair(i, j) > std::make_pair(k, l)) continue;
          const T v = A(i, l) * E(j, k) + A(j, k) * E(i, l) - A(i, k) * E(j, l) - A(j, l) * E(i, k);
          out(i, j, k, l) = v;
          out(j, i, k, l) = -v;
          out(i, j, l, k) = -v;
          out(j, i, l, k) = v;
          out(k, l, i, j) = v;
          out(l, k, i, j) = -v;
          out(k, l, j, i) = -v;
          out(l, k, j, i) = v;
        }
  return out;
}

/// Symbolic Kulkarni–Nomizu product. Throws std::invalid_argument on chart
/// mismatch or a non-symmetric input.
TensorField kulkarni_nomizu(const TensorField& A, const TensorField& E);

/// η⊗η as a symmetric (0,2) tensor.
TensorField outer_square(const OneFormField& eta);

template <class T>
Array<T> outer_square(const std::vector<T>& eta) {
  Array<T> out(eta.size(), 2, T(0));
  for (std::size_t i = 0; i < eta.size(); ++i)
    for (std::size_t j = 0; j < eta.size(); ++j) out(i, j) = eta[i] * eta[j];
  return out;
}

/// Componentwise a + s*b for equally shaped arrays.
template <class T>
Array<T> axpy(const Array<T>& a, const T& s, const Array<T>& b) {
  Array<T> out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out.at_flat(k) = a.at_flat(k) + s * b.at_flat(k);
  return out;
}

}  // namespace warpsgk::knproducts
