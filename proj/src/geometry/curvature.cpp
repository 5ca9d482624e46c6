#include "warpsgk/geometry/curvature.hpp"

#include "warpsgk/knproducts/knproducts.hpp"

namespace warpsgk::geometry {

namespace {

// Gauss–Jordan over the field of canonical rational functions. Returns the
// inverse and the determinant.
std::pair<Array<Expr>, Expr> invert(const Array<Expr>& m) {
  const std::size_t n = m.dim();
  Array<Expr> a = m;
  Array<Expr> inv(n, 2, Expr(0));
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = Expr(1);
  Expr det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r)
      if (!a(r, col).is_zero_constant()) {
        piv = r;
        break;
      }
    if (piv == n)
      throw SingularMetric("metric is singular: the leading " + std::to_string(col + 1) + "x" +
                           std::to_string(col + 1) + " block after elimination has a vanishing minor (column " +
                           std::to_string(col + 1) + ")");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
      det = -det;
    }
    const Expr p = a(col, col);
    det = det * p;
    const Expr pinv = Expr(1) / p;
    for (std::size_t c = 0; c < n; ++c) {
      if (!a(col, c).is_zero_constant()) a(col, c) = a(col, c) * pinv;
      if (!inv(col, c).is_zero_constant()) inv(col, c) = inv(col, c) * pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero_constant()) continue;
      const Expr factor = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        if (!a(col, c).is_zero_constant()) a(r, c) = a(r, c) - factor * a(col, c);
        if (!inv(col, c).is_zero_constant()) inv(r, c) = inv(r, c) - factor * inv(col, c);
      }
    }
  }
  return {inv, det};
}

// Γ_{l,ij} = ½(∂_i g_jl + ∂_j g_il - ∂_l g_ij), stored as (l, i, j).
Array<Expr> christoffel_first_kind(const MetricField& g) {
  const std::size_t n = g.dim();
  const Chart& ch = g.chart();
  Array<Expr> dg(n, 3, Expr(0));  // dg(i,j,m) = ∂_m g_ij
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        if (g(i, j).is_zero_constant()) continue;
        dg(i, j, m) = symexpr::differentiate(g(i, j), ch.symbol(m));
        dg(j, i, m) = dg(i, j, m);
      }
  const Expr half = Expr(Rational(1, 2));
  Array<Expr> out(n, 3, Expr(0));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const Expr v = half * (dg(j, l, i) + dg(i, l, j) - dg(i, j, l));
        out(l, i, j) = v;
        out(l, j, i) = v;
      }
  return out;
}

TensorField raise_christoffel(const MetricField& g, const Array<Expr>& first) {
  const std::size_t n = g.dim();
  const TensorField& ginv = g.inverse();
  TensorField gamma(g.chart(), Valence::Mixed12, SymmetryClass::None);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Expr acc(0);
        for (std::size_t l = 0; l < n; ++l)
          if (!ginv(k, l).is_zero_constant() && !first(l, i, j).is_zero_constant())
            acc = acc + ginv(k, l) * first(l, i, j);
        gamma(k, i, j) = acc;
        gamma(k, j, i) = acc;
      }
  return gamma;
}

TensorField riemann_from(const MetricField& g, const Array<Expr>& first, const TensorField& gamma) {
  const std::size_t n = g.dim();
  const Chart& ch = g.chart();
  TensorField R(ch, Valence::Lower4, SymmetryClass::RiemannType);
  for (const auto& idx : fundamental_domain(SymmetryClass::RiemannType, n, 4)) {
    const std::size_t a = idx[0], b = idx[1], c = idx[2], d = idx[3];
    Expr v = symexpr::differentiate(first(a, b, d), ch.symbol(c)) -
             symexpr::differentiate(first(a, b, c), ch.symbol(d));
    for (std::size_t h = 0; h < n; ++h) {
      if (!first(h, c, a).is_zero_constant() && !gamma(h, b, d).is_zero_constant())
        v = v - first(h, c, a) * gamma(h, b, d);
      if (!first(h, d, a).is_zero_constant() && !gamma(h, b, c).is_zero_constant())
        v = v + first(h, d, a) * gamma(h, b, c);
    }
    R(a, b, c, d) = v;
  }
  fill_by_symmetry(R);
  return R;
}

TensorField ricci_from(const MetricField& g, const TensorField& R) {
  const std::size_t n = g.dim();
  const TensorField& ginv = g.inverse();
  TensorField S(g.chart(), Valence::Lower2, SymmetryClass::SymmetricPair);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      Expr acc(0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
          if (!ginv(i, l).is_zero_constant() && !R(i, j, k, l).is_zero_constant())
            acc = acc + ginv(i, l) * R(i, j, k, l);
      S(j, k) = acc;
      S(k, j) = acc;
    }
  return S;
}

Expr trace(const MetricField& g, const TensorField& S) {
  const std::size_t n = g.dim();
  Expr acc(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!g.inverse()(i, j).is_zero_constant() && !S(i, j).is_zero_constant())
        acc = acc + g.inverse()(i, j) * S(i, j);
  return acc;
}

}  // namespace

MetricField::MetricField(Chart chart, const Array<Expr>& components)
    : g_(chart, Valence::Lower2, SymmetryClass::SymmetricPair), inverse_(chart, Valence::Upper2, SymmetryClass::SymmetricPair) {
  const std::size_t n = g_.dim();
  if (components.dim() != n || components.rank() != 2)
    throw std::invalid_argument("metric needs an " + std::to_string(n) + "x" + std::to_string(n) + " component array");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g_(i, j) = symexpr::canonicalize(components(i, j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(g_(i, j) == g_(j, i)))
        throw std::invalid_argument("metric is not symmetric at (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
  auto [inv, det] = invert(g_.components);
  inverse_.components = std::move(inv);
  det_ = std::move(det);
}

MetricField MetricField::diagonal(Chart chart, const std::vector<Expr>& entries) {
  const std::size_t n = chart.dim();
  if (entries.size() != n) throw std::invalid_argument("diagonal metric needs one entry per coordinate");
  Array<Expr> comps(n, 2, Expr(0));
  for (std::size_t i = 0; i < n; ++i) comps(i, i) = entries[i];
  return MetricField(std::move(chart), comps);
}

TensorField inverse_metric(const MetricField& g) { return g.inverse(); }

TensorField christoffel(const MetricField& g) { return raise_christoffel(g, christoffel_first_kind(g)); }

TensorField riemann(const MetricField& g) {
  const Array<Expr> first = christoffel_first_kind(g);
  return riemann_from(g, first, raise_christoffel(g, first));
}

TensorField ricci(const MetricField& g) { return ricci_from(g, riemann(g)); }

Expr scalar_curvature(const MetricField& g) { return trace(g, ricci(g)); }

TensorField covariant_derivative(const TensorField& t, const TensorField& gamma) {
  const std::size_t n = t.dim();
  const std::size_t k = t.components.rank();
  Valence out_valence;
  switch (k) {
    case 2:
      out_valence = Valence::Lower3;
      break;
    case 4:
      out_valence = Valence::Lower5;
      break;
    default:
      throw std::invalid_argument("covariant_derivative supports (0,2) and (0,4) tensors");
  }
  TensorField out(t.chart, out_valence, t.symmetry);
  for (const auto& base : fundamental_domain(t.symmetry, n, k)) {
    for (std::size_t m = 0; m < n; ++m) {
      Expr v = symexpr::differentiate(t.components.at_flat(t.components.flatten(base)), t.chart.symbol(m));
      std::vector<std::size_t> idx = base;
      for (std::size_t r = 0; r < k; ++r) {
        const std::size_t orig = idx[r];
        for (std::size_t h = 0; h < n; ++h) {
          const Expr& G = gamma(h, m, orig);
          if (G.is_zero_constant()) continue;
          idx[r] = h;
          const Expr& c = t.components.at_flat(t.components.flatten(idx));
          if (!c.is_zero_constant()) v = v - G * c;
        }
        idx[r] = orig;
      }
      std::vector<std::size_t> full = base;
      full.push_back(m);
      out.components.at_flat(out.components.flatten(full)) = v;
    }
  }
  fill_by_symmetry(out);
  return out;
}

TensorField covariant_derivative_r(const MetricField& g) {
  const Array<Expr> first = christoffel_first_kind(g);
  const TensorField gamma = raise_christoffel(g, first);
  return covariant_derivative(riemann_from(g, first, gamma), gamma);
}

TensorField nabla_metric(const MetricField& g) {
  TensorField t = g.tensor();
  return covariant_derivative(t, christoffel(g));
}

Curvature::Curvature(const MetricField& metric, bool with_derivative) : g(metric) {
  const Array<Expr> first = christoffel_first_kind(g);
  gamma = raise_christoffel(g, first);
  R = riemann_from(g, first, gamma);
  S = ricci_from(g, R);
  kappa = trace(g, S);
  if (with_derivative) nabla_R = covariant_derivative(R, gamma);
}

bool Curvature::is_flat() const {
  for (const Expr& e : R.components.data())
    if (!e.is_zero_constant()) return false;
  return true;
}

TensorField concircular(const Curvature& c) {
  const std::size_t n = c.dim();
  const TensorField gg = knproducts::kulkarni_nomizu(c.g.tensor(), c.g.tensor());
  const Expr s = c.kappa / Expr(static_cast<int>(2 * n * (n - 1)));
  TensorField W(c.chart(), Valence::Lower4, SymmetryClass::RiemannType);
  for (std::size_t k = 0; k < W.components.size(); ++k)
    W.components.at_flat(k) = c.R.components.at_flat(k) - s * gg.components.at_flat(k);
  return W;
}

TensorField concircular(const MetricField& g) { return concircular(Curvature(g, false)); }

CurvatureResiduals curvature_residuals(const Curvature& c) {
  const std::size_t n = c.dim();
  CurvatureResiduals out;
  out.einstein_dev = TensorField(c.chart(), Valence::Lower2, SymmetryClass::SymmetricPair);
  const Expr e = c.kappa / Expr(static_cast<int>(n));
  for (std::size_t k = 0; k < out.einstein_dev.components.size(); ++k)
    out.einstein_dev.components.at_flat(k) = c.S.components.at_flat(k) - e * c.g.tensor().components.at_flat(k);
  const TensorField gg = knproducts::kulkarni_nomizu(c.g.tensor(), c.g.tensor());
  const Expr s = n > 1 ? c.kappa / Expr(static_cast<int>(2 * n * (n - 1))) : Expr(0);
  out.const_curv_dev = TensorField(c.chart(), Valence::Lower4, SymmetryClass::RiemannType);
  for (std::size_t k = 0; k < out.const_curv_dev.components.size(); ++k)
    out.const_curv_dev.components.at_flat(k) = c.R.components.at_flat(k) - s * gg.components.at_flat(k);
  return out;
}

CurvatureResiduals curvature_residuals(const MetricField& g) { return curvature_residuals(Curvature(g, false)); }

std::vector<IdentityCheck> check_identities(const Curvature& c, const symexpr::SamplingOptions& opts) {
  const std::size_t n = c.dim();
  std::vector<IdentityCheck> out = {{"R_ijkl + R_jikl"},         {"R_ijkl + R_ijlk"},
                                    {"R_ijkl - R_klij"},         {"first Bianchi"},
                                    {"second Bianchi"},          {"S_ij - S_ji"},
                                    {"g_ij,k"}};
  auto test = [&](IdentityCheck& chk, const Expr& e, std::vector<std::size_t> idx) {
    ++chk.checked;
    const Expr z = symexpr::canonicalize(e);
    if (z.is_zero_constant() || symexpr::is_zero(z, opts).verdict != symexpr::ZeroVerdict::NonZero) return;
    if (chk.violations++ == 0) chk.first_violation = std::move(idx);
  };
  const auto& R = c.R;
  const bool have_dr = c.nabla_R.components.size() > 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      test(out[5], c.S(i, j) - c.S(j, i), {i, j});
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          test(out[0], R(i, j, k, l) + R(j, i, k, l), {i, j, k, l});
          test(out[1], R(i, j, k, l) + R(i, j, l, k), {i, j, k, l});
          test(out[2], R(i, j, k, l) - R(k, l, i, j), {i, j, k, l});
          test(out[3], R(i, j, k, l) + R(i, k, l, j) + R(i, l, j, k), {i, j, k, l});
          if (have_dr)
            for (std::size_t m = 0; m < n; ++m) {
              const auto& D = c.nabla_R;
              test(out[4], D(i, j, k, l, m) + D(i, j, l, m, k) + D(i, j, m, k, l), {i, j, k, l, m});
            }
        }
    }
  const TensorField ng = nabla_metric(c.g);
  for (std::size_t k = 0; k < ng.components.size(); ++k)
    test(out[6], ng.components.at_flat(k), ng.components.unflatten(k));
  return out;
}

}  // namespace warpsgk::geometry
