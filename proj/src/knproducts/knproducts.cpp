#include "warpsgk/knproducts/knproducts.hpp"

namespace warpsgk::knproducts {

namespace {

void require_symmetric(const TensorField& t, const char* name) {
  if (t.valence != geometry::Valence::Lower2)
    throw std::invalid_argument(std::string(name) + " must be a (0,2) tensor");
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (t(i, j) == t(j, i)) continue;
      if (symexpr::is_zero(t(i, j) - t(j, i)).verdict == symexpr::ZeroVerdict::NonZero)
        throw std::invalid_argument(std::string(name) + " is not symmetric at (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
    }
}

}  // namespace

TensorField kulkarni_nomizu(const TensorField& A, const TensorField& E) {
  if (!(A.chart == E.chart)) throw std::invalid_argument("Kulkarni-Nomizu product of tensors on different charts");
  require_symmetric(A, "first factor");
  require_symmetric(E, "second factor");
  TensorField out(A.chart, geometry::Valence::Lower4, geometry::SymmetryClass::RiemannType);
  out.components = kulkarni_nomizu(A.components, E.components);
  return out;
}

TensorField outer_square(const OneFormField& eta) {
  TensorField out(eta.chart, geometry::Valence::Lower2, geometry::SymmetryClass::SymmetricPair);
  out.components = outer_square(eta.components);
  return out;
}

}  // namespace warpsgk::knproducts
