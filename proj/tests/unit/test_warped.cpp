#include "fixtures.hpp"
#include "warpsgk/warped/warped.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace warpsgk;
using namespace warpsgk::warped;
using fixtures::P;
using fixtures::same;
using symexpr::ZeroVerdict;

namespace {

WarpedSpec example1_spec() {
  MetricField base = fixtures::example1_base();
  MetricField fiber = fixtures::diag({"x4"}, {"1"});
  return {base, fiber, P(base, "exp(x3)")};
}

WarpedSpec hyperbolic_spec() {
  MetricField base = fixtures::diag({"t"}, {"1"});
  return {base, fixtures::diag({"y", "z"}, {"1", "1"}), P(base, "exp(2*t)")};
}

// a generic 2+2 instance with rational coefficients and non-diagonal blocks
WarpedSpec random_spec() {
  MetricField base = fixtures::metric({"x1", "x2"}, {{"2 + exp(x2)"}, {"1/3", "3/2 + exp(-x1)"}});
  MetricField fiber = fixtures::metric({"y1", "y2"}, {{"1 + exp(y2)/2"}, {"1/5", "2 + y1^2"}});
  return {base, fiber, P(base, "exp(x1)")};
}

const CrosscheckEntry& entry(const CrosscheckReport& r, const std::string& name) {
  for (const auto& e : r.entries)
    if (e.tensor == name) return e;
  throw std::runtime_error("no entry " + name);
}

bool all_zero(const TensorField& t) {
  return std::all_of(t.components.data().begin(), t.components.data().end(),
                     [](const Expr& e) { return e.is_zero_constant(); });
}

}  // namespace

TEST(BuildWarped, Example1) {
  const MetricField g = build_warped(example1_spec());
  const MetricField want = fixtures::example1_full();
  ASSERT_EQ(g.dim(), 4u);
  EXPECT_EQ(g.chart().names(), want.chart().names());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_TRUE(same(g(i, j), want(i, j))) << i << j;
}

TEST(BuildWarped, UnitWarpIsProduct) {
  const MetricField base = fixtures::example1_base();
  const MetricField fiber = fixtures::metric({"y1", "y2"}, {{"1 + exp(y2)/2"}, {"1/5", "2 + y1^2"}});
  const MetricField g = build_warped({base, fiber, Expr(1)});
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      const bool bi = i < 3, bj = j < 3;
      if (bi && bj) EXPECT_TRUE(same(g(i, j), base(i, j)));
      else if (!bi && !bj) EXPECT_TRUE(same(g(i, j), fiber(i - 3, j - 3)));
      else EXPECT_TRUE(g(i, j).is_zero_constant());
    }
}

TEST(BuildWarped, OneDimensionalBase) {
  const MetricField base = fixtures::diag({"t"}, {"1"});
  const MetricField g = build_warped({base, fixtures::diag({"y", "z"}, {"1", "1"}), P(base, "exp(t)")});
  EXPECT_TRUE(g(0, 1).is_zero_constant());
  EXPECT_TRUE(g(0, 2).is_zero_constant());
  EXPECT_TRUE(same(g(1, 1), P(base, "exp(t)")));
  EXPECT_TRUE(g(1, 2).is_zero_constant());
}

TEST(BuildWarped, Rejections) {
  const MetricField base = fixtures::example1_base();
  const MetricField clash = fixtures::diag({"x3"}, {"1"});
  EXPECT_THROW(build_warped({base, clash, Expr(1)}), std::invalid_argument);
  const MetricField fiber = fixtures::diag({"x4"}, {"1"});
  const Chart both({"x1", "x2", "x3", "x4"});
  EXPECT_THROW(build_warped({base, fiber, symexpr::parse_expr("exp(x4)", both)}), std::invalid_argument);
  EXPECT_THROW(build_warped({base, fiber, Expr(0)}), std::domain_error);
  EXPECT_THROW(build_warped({base, fiber, P(base, "x1")}), std::domain_error);
  EXPECT_THROW(build_warped({base, fiber, P(base, "-exp(x1)")}), std::domain_error);
}

TEST(Auxiliaries, Example1) {
  const WarpedAux a = warped_auxiliaries(example1_spec());
  const MetricField& b = example1_spec().base;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_TRUE(same(a.T(i, j), (i == 2 && j == 2) ? P(b, "-1/4") : Expr(0))) << i << j;
  EXPECT_TRUE(same(a.trT, P(b, "-1/4")));
  EXPECT_TRUE(same(a.P, P(b, "1/4")));
  EXPECT_TRUE(same(a.Q, P(b, "exp(x3)/4")));
  for (const Expr& e : a.dP.components) EXPECT_TRUE(e.is_zero_constant());
  EXPECT_TRUE(same(a.df[2], P(b, "exp(x3)")));
  EXPECT_TRUE(all_zero(a.nabla_T));
}

TEST(Auxiliaries, HyperbolicByHand) {
  // f = e^{2t}: ∇_t f_t = 4e^{2t}, f_t² / 2f = 2e^{2t}, so T_tt = -1; P = 4e^{4t}/(4e^{4t}) = 1
  const WarpedSpec s = hyperbolic_spec();
  const WarpedAux a = warped_auxiliaries(s);
  EXPECT_TRUE(same(a.T(0, 0), Expr(-1)));
  EXPECT_TRUE(same(a.P, Expr(1)));
  EXPECT_TRUE(same(a.trT, Expr(-1)));
  EXPECT_TRUE(same(a.Q, P(s.base, "2*exp(2*t)")));
}

TEST(Auxiliaries, UnitWarpVanishes) {
  const WarpedAux a = warped_auxiliaries({fixtures::example1_base(), fixtures::diag({"x4"}, {"1"}), Expr(1)});
  EXPECT_TRUE(all_zero(a.T));
  EXPECT_TRUE(a.P.is_zero_constant());
  EXPECT_TRUE(a.Q.is_zero_constant());
  EXPECT_TRUE(a.trT.is_zero_constant());
}

TEST(Auxiliaries, PIsItsDefiningContraction) {
  const WarpedSpec s = random_spec();
  const WarpedAux a = warped_auxiliaries(s);
  const TensorField& ginv = s.base.inverse();
  Expr c(0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) c += ginv(i, j) * a.df[i] * a.df[j];
  EXPECT_TRUE(same(a.P, c / (Expr(4) * s.f * s.f)));
  EXPECT_TRUE(same(a.T(0, 1), a.T(1, 0)));
}

TEST(Predict, Example1Goldens) {
  const WarpedSpec s = example1_spec();
  const WarpedPrediction p = predict_components(s);
  const MetricField g = fixtures::example1_full();
  EXPECT_TRUE(same(p.nabla_R(0, 1, 0, 1, 0), P(g, "exp(x2)/4")));
  EXPECT_TRUE(same(p.nabla_R(0, 1, 0, 1, 1), P(g, "exp(x1)/4")));
  EXPECT_TRUE(same(p.gS(2, 3, 2, 3), P(g, "-exp(x3)/2")));
  EXPECT_TRUE(same(p.R(2, 3, 2, 3), P(g, "-exp(x3)/4")));
  EXPECT_TRUE(same(p.S(3, 3), P(g, "exp(x3)/4")));
  EXPECT_TRUE(same(p.SS(0, 3, 0, 3), P(g, "-(1/8)*exp(x3)*(exp(x2 - x1) + 1)")));
  EXPECT_TRUE(same(p.kappa, P(g, "(exp(-x1) + exp(-x2))/2 + 1/2")));
}

TEST(Predict, FlatProductOnlyMetricTerms) {
  const WarpedSpec s{fixtures::diag({"x1", "x2"}, {"1", "1"}), fixtures::diag({"y1", "y2"}, {"1", "1"}), Expr(1)};
  const WarpedPrediction p = predict_components(s);
  EXPECT_TRUE(all_zero(p.R));
  EXPECT_TRUE(all_zero(p.S));
  EXPECT_TRUE(all_zero(p.nabla_R));
  EXPECT_TRUE(all_zero(p.gS));
  EXPECT_TRUE(all_zero(p.SS));
  EXPECT_TRUE(p.kappa.is_zero_constant());
  EXPECT_FALSE(all_zero(p.gg));
  EXPECT_TRUE(same(p.gg(0, 2, 0, 2), Expr(-2)));
}

TEST(Predict, UnitWarpScalarCurvatureAdds) {
  const MetricField base = fixtures::example1_base();
  const MetricField fiber = fixtures::diag({"y1", "y2"}, {"exp(y2)", "exp(y1)"});
  const WarpedPrediction p = predict_components({base, fiber, Expr(1)});
  EXPECT_TRUE(same(p.kappa, scalar_curvature(base) + scalar_curvature(fiber)));
}

TEST(Crosscheck, Example1AllProvedZero) {
  const CrosscheckReport r = crosscheck(example1_spec());
  ASSERT_EQ(r.entries.size(), 7u);
  for (const auto& e : r.entries) EXPECT_EQ(e.verdict, ZeroVerdict::ProvedZero) << e.tensor << " " << e.block;
  EXPECT_TRUE(r.all_zero);
}

TEST(Crosscheck, UnitWarpProductOfTwoBases) {
  const MetricField b1 = fixtures::example1_base();
  const MetricField b2 = fixtures::diag({"y1", "y2", "y3"}, {"exp(y2)", "exp(y1)", "1"});
  const CrosscheckReport r = crosscheck({b1, b2, Expr(1)});
  for (const auto& e : r.entries) EXPECT_NE(e.verdict, ZeroVerdict::NonZero) << e.tensor << " " << e.block;
}

TEST(Crosscheck, RandomTwoPlusTwo) {
  const CrosscheckReport r = crosscheck(random_spec());
  for (const auto& e : r.entries) EXPECT_NE(e.verdict, ZeroVerdict::NonZero) << e.tensor << " " << e.block;
  EXPECT_TRUE(r.all_zero);
}

TEST(Crosscheck, HyperbolicAllZero) {
  EXPECT_TRUE(crosscheck(hyperbolic_spec()).all_zero);
}

TEST(Crosscheck, PrintedFormulasAreLocalized) {
  const CrosscheckReport ex1 = crosscheck(example1_spec(), FormulaVariant::AsPrinted);
  EXPECT_FALSE(ex1.all_zero);
  EXPECT_EQ(entry(ex1, "kappa").verdict, ZeroVerdict::NonZero);
  EXPECT_EQ(entry(ex1, "SS").verdict, ZeroVerdict::NonZero);
  EXPECT_EQ(entry(ex1, "SS").block, "BBBB");
  // a one-dimensional fiber hides the fiber-block slips
  EXPECT_EQ(entry(ex1, "R").verdict, ZeroVerdict::ProvedZero);

  const CrosscheckReport hyp = crosscheck(hyperbolic_spec(), FormulaVariant::AsPrinted);
  EXPECT_EQ(entry(hyp, "R").verdict, ZeroVerdict::NonZero);
  EXPECT_EQ(entry(hyp, "R").block, "FFFF");
}

TEST(Crosscheck, DiscrepancyList) {
  const auto d = printed_discrepancies(random_spec());
  std::vector<std::string> names;
  for (const auto& x : d) names.push_back(x.tensor);
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"R", "SS", "SS", "kappa"}));  // both S∧S blocks
  for (const auto& x : d) {
    EXPECT_FALSE(x.block.empty());
    EXPECT_FALSE(x.printed.empty());
    EXPECT_FALSE(x.corrected.empty());
  }
}

TEST(BlockLabel, Patterns) {
  const WarpedSpec s = example1_spec();
  EXPECT_EQ(block_label(s, {0, 3, 1, 3}), "BFBF");
  EXPECT_EQ(block_label(s, {0, 1, 2, 3, 3}), "BBBF,F");
}
