#pragma once

#include "warpsgk/geometry/tensor.hpp"

#include <memory>
#include <stdexcept>

namespace warpsgk::geometry {

class SingularMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Symmetric metric on a chart. Construction canonicalizes the components,
/// checks symmetry and computes the inverse once; a metric whose
/// determinant is identically zero is rejected with SingularMetric.
class MetricField {
 public:
  MetricField(Chart chart, const Array<Expr>& components);
  static MetricField diagonal(Chart chart, const std::vector<Expr>& entries);

  const Chart& chart() const { return g_.chart; }
  std::size_t dim() const { return g_.dim(); }
  const Expr& operator()(std::size_t i, std::size_t j) const { return g_(i, j); }
  const TensorField& tensor() const { return g_; }
  const TensorField& inverse() const { return inverse_; }
  const Expr& determinant() const { return det_; }

 private:
  TensorField g_;
  TensorField inverse_;
  Expr det_;
};

TensorField inverse_metric(const MetricField& g);

/// Γ^k_ij (first index upper), symmetric in i, j.
TensorField christoffel(const MetricField& g);

/// R_abcd = g_ah R^h_bcd with R^h_bcd = ∂_cΓ^h_bd - ∂_dΓ^h_bc + Γ^h_cm Γ^m_bd - Γ^h_dm Γ^m_bc.
TensorField riemann(const MetricField& g);

/// S_jk = g^il R_ijkl.
TensorField ricci(const MetricField& g);
Expr scalar_curvature(const MetricField& g);

/// (∇t)_{i1..ik,m} for a (0,k) tensor, derivative index last. Symmetries of t
/// carry over to the first k indices.
TensorField covariant_derivative(const TensorField& t, const TensorField& gamma);

/// R_ijkl,m.
TensorField covariant_derivative_r(const MetricField& g);

/// W = R - κ/(2n(n-1)) g∧g.
TensorField concircular(const MetricField& g);

struct CurvatureResiduals {
  TensorField einstein_dev;    // S - (κ/n) g
  TensorField const_curv_dev;  // R - κ/(n(n-1)) ½ g∧g
};
CurvatureResiduals curvature_residuals(const MetricField& g);

/// g_ij,k; identically zero for the Levi-Civita connection.
TensorField nabla_metric(const MetricField& g);

/// The whole pipeline computed once. Later fields reuse earlier ones.
struct Curvature {
  explicit Curvature(const MetricField& metric, bool with_derivative = true);

  MetricField g;
  TensorField gamma;
  TensorField R;
  TensorField S;
  Expr kappa;
  TensorField nabla_R;  // empty unless requested

  const Chart& chart() const { return g.chart(); }
  std::size_t dim() const { return g.dim(); }
  bool is_flat() const;
};

TensorField concircular(const Curvature& c);
CurvatureResiduals curvature_residuals(const Curvature& c);

/// One algebraic or differential identity checked over every index tuple.
struct IdentityCheck {
  std::string name;
  std::size_t checked = 0;     // component expressions tested
  std::size_t violations = 0;  // NonZero verdicts
  std::vector<std::size_t> first_violation;
};

/// Riemann symmetries, first and second Bianchi identities, symmetry of S
/// and ∇g = 0, exhaustively. Each component goes through the two-tier zero
/// test; canonical zeros cost nothing.
std::vector<IdentityCheck> check_identities(const Curvature& c, const symexpr::SamplingOptions& opts = {});

}  // namespace warpsgk::geometry
