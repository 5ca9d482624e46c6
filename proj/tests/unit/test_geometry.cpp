#include "fixtures.hpp"
#include "warpsgk/knproducts/knproducts.hpp"

#include <gtest/gtest.h>

using namespace warpsgk;
using namespace warpsgk::geometry;
using fixtures::P;
using fixtures::same;
using symexpr::ZeroVerdict;

namespace {

bool vanishes(const Expr& e) { return symexpr::is_zero(e).verdict != ZeroVerdict::NonZero; }

std::vector<MetricField> property_metrics() {
  return {
      fixtures::example1_base(),
      fixtures::example1_full(),
      fixtures::diag({"x1", "x2", "x3"}, {"1", "1", "1"}),
      fixtures::metric({"x1", "x2"}, {{"1 + x1^2"}, {"x1*x2", "2 + exp(x2)"}}),
      fixtures::metric({"x1", "x2", "x3"}, {{"exp(x3)"}, {"1/2", "1 + x1^2"}, {"0", "x2", "3 + exp(-x1)"}}),
      fixtures::diag({"u", "v", "s", "t"}, {"exp(v)", "exp(u)", "exp(t)", "exp(s)"}),
  };
}

}  // namespace

TEST(InverseMetric, Example1Diagonal) {
  const MetricField g = fixtures::example1_full();
  const TensorField inv = inverse_metric(g);
  EXPECT_TRUE(same(inv(0, 0), P(g, "exp(-x2)")));
  EXPECT_TRUE(same(inv(1, 1), P(g, "exp(-x1)")));
  EXPECT_TRUE(same(inv(2, 2), P(g, "1")));
  EXPECT_TRUE(same(inv(3, 3), P(g, "exp(-x3)")));
  EXPECT_TRUE(inv(0, 1).is_zero_constant());
}

TEST(InverseMetric, IdentityAndGeneric) {
  const MetricField id = fixtures::diag({"x1", "x2", "x3"}, {"1", "1", "1"});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE(same(id.inverse()(i, j), Expr(i == j ? 1 : 0)));
  for (const MetricField& g : property_metrics()) {
    const std::size_t n = g.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Expr acc(0);
        for (std::size_t k = 0; k < n; ++k) acc += g.inverse()(i, k) * g(k, j);
        EXPECT_EQ(symexpr::is_zero(acc - Expr(i == j ? 1 : 0)).verdict, ZeroVerdict::ProvedZero);
      }
  }
}

TEST(InverseMetric, SingularRejected) {
  EXPECT_THROW(fixtures::metric({"x1", "x2"}, {{"exp(x1)"}, {"exp(x1)", "exp(x1)"}}), SingularMetric);
}

TEST(InverseMetric, AsymmetricRejected) {
  Chart ch({"x1", "x2"});
  Array<Expr> g(2, 2, Expr(1));
  g(0, 1) = Expr::symbol("x1");
  EXPECT_THROW(MetricField(ch, g), std::invalid_argument);
}

TEST(Christoffel, Euclidean) {
  const TensorField G = christoffel(fixtures::diag({"x1", "x2", "x3"}, {"1", "1", "1"}));
  for (const Expr& e : G.components.data()) EXPECT_TRUE(e.is_zero_constant());
}

TEST(Christoffel, Example1WarpedComponents) {
  const MetricField g = fixtures::example1_full();
  const TensorField G = christoffel(g);
  EXPECT_TRUE(same(G(3, 2, 3), Expr(Rational(1, 2))));
  EXPECT_TRUE(same(G(2, 3, 3), P(g, "-exp(x3)/2")));
}

TEST(Riemann, CalibrationAgainstBase) {
  const MetricField g = fixtures::example1_base();
  const TensorField R = riemann(g);
  EXPECT_TRUE(same(R(0, 1, 0, 1), P(g, "-(exp(x1)+exp(x2))/4")));
}

TEST(Riemann, Example1Full) {
  const MetricField g = fixtures::example1_full();
  const TensorField R = riemann(g);
  EXPECT_TRUE(same(R(0, 1, 0, 1), P(g, "-(exp(x1)+exp(x2))/4")));
  EXPECT_TRUE(same(R(2, 3, 2, 3), P(g, "-exp(x3)/4")));
  std::size_t nonzero = 0;
  for (const auto& idx : fundamental_domain(SymmetryClass::RiemannType, 4, 4))
    if (!R.components.at_flat(R.components.flatten(idx)).is_zero_constant()) ++nonzero;
  EXPECT_EQ(nonzero, 2u);
}

TEST(Riemann, FlatIsZero) {
  const Curvature c(fixtures::diag({"x1", "x2", "x3"}, {"1", "1", "1"}));
  EXPECT_TRUE(c.is_flat());
  for (const Expr& e : c.S.components.data()) EXPECT_TRUE(e.is_zero_constant());
  EXPECT_TRUE(c.kappa.is_zero_constant());
}

TEST(Ricci, Example1) {
  const MetricField g = fixtures::example1_full();
  const Curvature c(g);
  EXPECT_TRUE(same(c.S(2, 2), Expr(Rational(1, 4))));
  EXPECT_TRUE(same(c.S(3, 3), P(g, "exp(x3)/4")));
  EXPECT_TRUE(same(c.S(0, 0), P(g, "(exp(x2-x1)+1)/4")));
  EXPECT_TRUE(same(c.S(1, 1), P(g, "(exp(x1-x2)+1)/4")));
  EXPECT_TRUE(same(c.kappa, P(g, "(exp(-x1)+exp(-x2))/2 + 1/2")));
}

TEST(Ricci, Example1BaseDiffersFromFullOnlyInT33) {
  const MetricField g = fixtures::example1_base();
  const Curvature c(g);
  EXPECT_TRUE(same(c.S(0, 0), P(g, "(exp(x2-x1)+1)/4")));
  EXPECT_TRUE(same(c.S(1, 1), P(g, "(exp(x1-x2)+1)/4")));
  EXPECT_TRUE(c.S(2, 2).is_zero_constant());
  EXPECT_TRUE(same(c.kappa, P(g, "(exp(-x1)+exp(-x2))/2")));
}

TEST(NablaR, Example1) {
  const MetricField g = fixtures::example1_full();
  const TensorField dR = covariant_derivative_r(g);
  EXPECT_TRUE(same(dR(0, 1, 0, 1, 0), P(g, "exp(x2)/4")));
  EXPECT_TRUE(same(dR(0, 1, 0, 1, 1), P(g, "exp(x1)/4")));
  std::size_t nonzero = 0;
  for (const Expr& e : dR.components.data())
    if (!e.is_zero_constant()) ++nonzero;
  EXPECT_EQ(nonzero, 8u);  // two derivative slots times the four signs of R_1212
}

TEST(NablaR, LocallySymmetric) {
  const TensorField dR = covariant_derivative_r(fixtures::diag({"x1", "x2"}, {"1", "1"}));
  for (const Expr& e : dR.components.data()) EXPECT_TRUE(e.is_zero_constant());
}

TEST(Concircular, FlatAndExample1) {
  const Curvature flat(fixtures::diag({"x1", "x2", "x3"}, {"1", "1", "1"}), false);
  const TensorField W0 = concircular(flat);
  for (const Expr& e : W0.components.data()) EXPECT_TRUE(e.is_zero_constant());
  const MetricField g = fixtures::example1_full();
  const Curvature c(g, false);
  const TensorField W = concircular(c);
  const TensorField gg = knproducts::kulkarni_nomizu(g.tensor(), g.tensor());
  EXPECT_TRUE(same(W(0, 1, 0, 1), c.R(0, 1, 0, 1) - c.kappa / Expr(24) * gg(0, 1, 0, 1)));
}

TEST(Concircular, ConstantCurvatureSurrogate) {
  // Hyperbolic plane in horocyclic coordinates, dt^2 + e^{2t} dx^2.
  const Curvature c(fixtures::diag({"t", "x"}, {"1", "exp(2*t)"}), false);
  const TensorField W = concircular(c);
  for (const Expr& e : W.components.data()) EXPECT_TRUE(vanishes(e));
  const CurvatureResiduals r = curvature_residuals(c);
  EXPECT_EQ(is_zero(r.const_curv_dev).verdict, ZeroVerdict::ProvedZero);
  EXPECT_EQ(is_zero(r.einstein_dev).verdict, ZeroVerdict::ProvedZero);
}

TEST(CurvatureResiduals, FlatOneDimensionalAndExample1) {
  for (const MetricField& g : {fixtures::diag({"x1", "x2", "x3"}, {"1", "1", "1"}), fixtures::diag({"x4"}, {"exp(x4)"})}) {
    const CurvatureResiduals r = curvature_residuals(g);
    EXPECT_EQ(is_zero(r.einstein_dev).verdict, ZeroVerdict::ProvedZero);
    EXPECT_EQ(is_zero(r.const_curv_dev).verdict, ZeroVerdict::ProvedZero);
  }
  const CurvatureResiduals r = curvature_residuals(fixtures::example1_full());
  EXPECT_EQ(is_zero(r.einstein_dev).verdict, ZeroVerdict::NonZero);
  Point origin;
  for (const char* s : {"x1", "x2", "x3", "x4"}) origin.set(s, 0);
  // S_33 - κ/4 g_33 = 1/4 - 3/8 at the origin.
  EXPECT_EQ(symexpr::evaluate(r.einstein_dev(2, 2), origin), Real(-1) / 8);
}

// Exhaustive identity checks over every index tuple.
TEST(Properties, CurvatureIdentities) {
  for (const MetricField& g : property_metrics()) {
    const Curvature c(g);
    const std::size_t n = g.dim();
    const auto& R = c.R;
    const auto& dR = c.nabla_R;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_TRUE(vanishes(c.S(i, j) - c.S(j, i)));
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            EXPECT_TRUE(vanishes(R(i, j, k, l) + R(j, i, k, l)));
            EXPECT_TRUE(vanishes(R(i, j, k, l) + R(i, j, l, k)));
            EXPECT_TRUE(vanishes(R(i, j, k, l) - R(k, l, i, j)));
            EXPECT_TRUE(vanishes(R(i, j, k, l) + R(i, k, l, j) + R(i, l, j, k)));
            for (std::size_t m = 0; m < n; ++m)
              EXPECT_TRUE(vanishes(dR(i, j, k, l, m) + dR(i, j, l, m, k) + dR(i, j, m, k, l)))
                  << "second Bianchi at " << i << j << k << l << m;
          }
      }
    const TensorField ng = nabla_metric(g);
    EXPECT_EQ(is_zero(ng).verdict, ZeroVerdict::ProvedZero);
  }
}

TEST(Properties, ChristoffelSymmetricInLowerIndices) {
  for (const MetricField& g : property_metrics()) {
    const TensorField G = christoffel(g);
    const std::size_t n = g.dim();
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) EXPECT_TRUE(G(k, i, j) == G(k, j, i));
  }
}

TEST(KulkarniNomizu, Example1Golden) {
  const MetricField g = fixtures::example1_full();
  const Curvature c(g, false);
  const TensorField gg = knproducts::kulkarni_nomizu(g.tensor(), g.tensor());
  const TensorField gS = knproducts::kulkarni_nomizu(g.tensor(), c.S);
  const TensorField SS = knproducts::kulkarni_nomizu(c.S, c.S);
  EXPECT_TRUE(same(gg(0, 1, 0, 1), P(g, "-2*exp(x1+x2)")));
  EXPECT_TRUE(same(gS(2, 3, 2, 3), P(g, "-exp(x3)/2")));
  EXPECT_TRUE(same(SS(2, 3, 2, 3), P(g, "-exp(x3)/8")));
  EXPECT_TRUE(same(gS(0, 1, 0, 1), P(g, "(-exp(x1)-exp(x2))/2")));
  EXPECT_TRUE(same(SS(0, 1, 0, 1), P(g, "(-cosh(x1-x2)-1)/4")));
  EXPECT_TRUE(same(gS(0, 3, 0, 3), P(g, "-exp(x3-x1)*(exp(x2)*(exp(x1)+1)+exp(x1))/4")));
  EXPECT_TRUE(same(SS(1, 3, 1, 3), P(g, "-exp(x3)*(exp(x1-x2)+1)/8")));
}

TEST(KulkarniNomizu, SymmetryAndBilinearity) {
  for (const MetricField& g : property_metrics()) {
    const Curvature c(g, false);
    const std::size_t n = g.dim();
    const TensorField gS = knproducts::kulkarni_nomizu(g.tensor(), c.S);
    const TensorField Sg = knproducts::kulkarni_nomizu(c.S, g.tensor());
    const TensorField gg = knproducts::kulkarni_nomizu(g.tensor(), g.tensor());
    OneFormField eta(g.chart());
    for (std::size_t i = 0; i < n; ++i) eta[i] = Expr(Rational(static_cast<long>(i) + 1, 3)) * g(i, i);
    const TensorField ee = knproducts::outer_square(eta);
    TensorField gpe(g.chart(), Valence::Lower2, SymmetryClass::SymmetricPair);
    for (std::size_t k = 0; k < gpe.components.size(); ++k)
      gpe.components.at_flat(k) = g.tensor().components.at_flat(k) + ee.components.at_flat(k);
    const TensorField lhs = knproducts::kulkarni_nomizu(g.tensor(), gpe);
    const TensorField ge = knproducts::kulkarni_nomizu(g.tensor(), ee);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            EXPECT_TRUE(vanishes(gS(i, j, k, l) - Sg(i, j, k, l)));
            EXPECT_TRUE(vanishes(gg(i, j, k, l) - Expr(2) * (g(i, l) * g(j, k) - g(i, k) * g(j, l))));
            EXPECT_TRUE(vanishes(lhs(i, j, k, l) - gg(i, j, k, l) - ge(i, j, k, l)));
            for (const TensorField* t : {&gS, &ge}) {
              const TensorField& T = *t;
              EXPECT_TRUE(vanishes(T(i, j, k, l) + T(j, i, k, l)));
              EXPECT_TRUE(vanishes(T(i, j, k, l) + T(i, j, l, k)));
              EXPECT_TRUE(vanishes(T(i, j, k, l) - T(k, l, i, j)));
              EXPECT_TRUE(vanishes(T(i, j, k, l) + T(i, k, l, j) + T(i, l, j, k)));
            }
          }
  }
}

TEST(KulkarniNomizu, RejectsMismatch) {
  const MetricField a = fixtures::example1_base();
  const MetricField b = fixtures::example1_full();
  EXPECT_THROW(knproducts::kulkarni_nomizu(a.tensor(), b.tensor()), std::invalid_argument);
  TensorField bad(a.chart(), Valence::Lower2, SymmetryClass::None);
  bad(0, 1) = Expr(1);
  EXPECT_THROW(knproducts::kulkarni_nomizu(a.tensor(), bad), std::invalid_argument);
}

TEST(Properties, IdentityReportIsCleanAndCatchesTampering) {
  Curvature c(fixtures::example1_full());
  for (const auto& chk : check_identities(c)) {
    EXPECT_EQ(chk.violations, 0u) << chk.name;
    EXPECT_GT(chk.checked, 0u) << chk.name;
  }
  c.R(0, 1, 0, 1) = c.R(0, 1, 0, 1) + Expr(1);
  const auto rep = check_identities(c);
  EXPECT_GT(rep[0].violations, 0u);
  EXPECT_EQ(rep[0].first_violation, (std::vector<std::size_t>{0, 1, 0, 1}));
}
