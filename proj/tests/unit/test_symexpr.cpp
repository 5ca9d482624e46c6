#include "warpsgk/symexpr/expr.hpp"
#include "warpsgk/symexpr/parse.hpp"
#include "warpsgk/symexpr/sampling.hpp"

#include <gtest/gtest.h>

using namespace warpsgk;
using namespace warpsgk::symexpr;

namespace {

const Chart& chart4() {
  static const Chart c({"x1", "x2", "x3", "x4"});
  return c;
}

Expr P(std::string_view s) { return parse_expr(s, chart4()); }

bool same(const Expr& a, const Expr& b) { return canonicalize(a - b).is_zero_constant(); }

}  // namespace

TEST(Differentiate, ExpOfCoordinate) { EXPECT_TRUE(same(differentiate(P("exp(x1)"), chart4(), "x1"), P("exp(x1)"))); }

TEST(Differentiate, ConstantIsZero) { EXPECT_TRUE(differentiate(P("1"), chart4(), "x3").is_zero_constant()); }

TEST(Differentiate, ProductOfExponentials) {
  EXPECT_TRUE(same(differentiate(P("exp(x2)*exp(x1)"), chart4(), "x2"), P("exp(x1+x2)")));
}

TEST(Differentiate, UnknownSymbolNamed) {
  try {
    differentiate(P("x1"), chart4(), "y7");
    FAIL();
  } catch (const UnknownSymbol& e) {
    EXPECT_EQ(e.name(), "y7");
  }
}

TEST(Differentiate, AgreesWithFiniteDifferences) {
  const std::vector<std::string> cases = {
      "exp(x2)*exp(x1)",
      "-(1/4)*(exp(x1)+exp(x2))",
      "exp(x2)/(exp(x1)+exp(x2))",
      "(x1^2 - 3*x2)/(2 + exp(x1 - x2))^2",
      "cosh(x1 - x2)*x3 + sinh(2*x3)",
  };
  SampleBox box(chart4(), 7);
  for (const auto& s : cases) {
    const Expr e = P(s);
    for (int k = 0; k < 10; ++k) {
      Point p = box.next();
      for (std::size_t c = 0; c < 4; ++c) {
        const int sym = chart4().symbol(c);
        const Rational h(1, 1000000);
        Point lo = p, hi = p;
        lo.set_symbol(sym, p.rational(sym) - h);
        hi.set_symbol(sym, p.rational(sym) + h);
        const Real fd = (evaluate(e, hi) - evaluate(e, lo)) / to_real(2 * h);
        const Real d = evaluate(differentiate(e, sym), p);
        const Real scale = std::max(Real(1), Real(boost::multiprecision::abs(d)));
        EXPECT_LT(boost::multiprecision::abs(fd - d) / scale, Real(1e-5)) << s << " d/d" << chart4().name(c);
      }
    }
  }
}

TEST(Canonicalize, ExponentialLaw) {
  Expr e = Expr::sum({Expr::product({Expr::exp(Expr::symbol("x1")), Expr::exp(Expr::symbol("x2"))}),
                      -Expr::exp(Expr::symbol("x1") + Expr::symbol("x2"))});
  EXPECT_FALSE(e.is_canonical());
  EXPECT_TRUE(canonicalize(e).is_zero_constant());
}

TEST(Canonicalize, Commutativity) {
  EXPECT_TRUE(canonicalize(P("(exp(x1)+exp(x2)) - (exp(x2)+exp(x1))")).is_zero_constant());
}

TEST(Canonicalize, HyperbolicSugarStaysInLanguage) {
  EXPECT_TRUE(same(P("cosh(x1-x2)"), P("(exp(x1-x2)+exp(x2-x1))/2")));
  EXPECT_TRUE(same(P("sinh(x1)+cosh(x1)"), P("exp(x1)")));
}

TEST(Canonicalize, Idempotent) {
  const Expr e = P("(exp(x1)-1)^2/(exp(2*x1) - 1) + x3/(x3 + exp(-x2))");
  const Expr once = canonicalize(e);
  const Expr twice = canonicalize(once);
  EXPECT_EQ(once.str(), twice.str());
  EXPECT_TRUE(once == twice);
}

TEST(Canonicalize, CancelsCommonFactors) {
  EXPECT_TRUE(same(P("(exp(2*x1) - 1)/(exp(x1) - 1)"), P("exp(x1) + 1")));
  EXPECT_TRUE(same(P("(x1^2 - x2^2)/(x1 + x2)"), P("x1 - x2")));
}

TEST(Canonicalize, DivisionBySyntacticZero) {
  EXPECT_THROW(canonicalize(Expr::quotient(Expr(1), Expr::symbol("x1") - Expr::symbol("x1"))), std::domain_error);
  EXPECT_THROW(P("1/(x1 - x1)"), ParseError);
}

TEST(Canonicalize, RejectsOutOfLanguageExponent) {
  EXPECT_THROW(P("exp(x1*x2)"), std::domain_error);
  EXPECT_THROW(P("exp(x1/2)"), std::domain_error);
  EXPECT_THROW(P("exp(x1+1)"), std::domain_error);
}

TEST(Evaluate, Basics) {
  Point p;
  p.set("x1", 0);
  p.set("x2", 0);
  p.set("x3", 0);
  EXPECT_EQ(evaluate(P("exp(x3)"), p), 1);
  EXPECT_EQ(evaluate(P("-(1/4)*(exp(x1)+exp(x2))"), p), Real(-1) / 2);
  EXPECT_EQ(evaluate(P("(1/2)*(exp(-x1)+exp(-x2)) - 1/2"), p), Real(1) / 2);
}

TEST(Evaluate, Precision) {
  Point p;
  p.set("x1", Rational(1, 3));
  const Real v = evaluate(P("exp(3*x1)"), p);
  EXPECT_LT(boost::multiprecision::abs(v - boost::multiprecision::exp(Real(1))), Real(1e-50));
}

TEST(Evaluate, UnboundAndSingular) {
  Point p;
  p.set("x1", 0);
  EXPECT_THROW(evaluate(P("x2"), p), UnboundSymbol);
  EXPECT_THROW(evaluate(P("1/x1"), p), SingularPoint);
}

TEST(ZeroTest, Verdicts) {
  EXPECT_EQ(is_zero(P("exp(x1) - exp(x1)")).verdict, ZeroVerdict::ProvedZero);
  const ZeroTest nz = is_zero(P("exp(x1) - exp(x2)"));
  EXPECT_EQ(nz.verdict, ZeroVerdict::NonZero);
  ASSERT_TRUE(nz.witness.has_value());
  EXPECT_NE(evaluate(P("exp(x1) - exp(x2)"), *nz.witness), 0);
}

TEST(ZeroTest, StructuralFallsBackToSampling) {
  // Kept structural so the proof tier is skipped.
  Expr e = Expr::sum({Expr::exp(Expr::symbol("x1") * Expr::symbol("x1")),
                      -Expr::exp(Expr::symbol("x1") * Expr::symbol("x1"))});
  EXPECT_EQ(is_zero(e).verdict, ZeroVerdict::NumericallyZero);
  Expr f = Expr::exp(Expr::symbol("x1") * Expr::symbol("x2"));
  EXPECT_EQ(is_zero(f).verdict, ZeroVerdict::NonZero);
}

TEST(Parse, Grammar) {
  EXPECT_TRUE(same(P("-x1 + (+2)"), P("2 - x1")));
  EXPECT_TRUE(same(P("x1^-2*x1^3"), P("x1")));
  EXPECT_TRUE(same(P("0.25*exp(x1)"), P("exp(x1)/4")));
  EXPECT_THROW(P("x1 +"), ParseError);
  EXPECT_THROW(P("(x1"), ParseError);
  EXPECT_THROW(P("y + 1"), UnknownSymbol);
  EXPECT_THROW(P("x1^x2"), ParseError);
}

TEST(Parse, ErrorColumn) {
  try {
    P("x1 * * x2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 6u);
  }
}

TEST(Sampling, DeterministicAndBounded) {
  SampleBox a(chart4(), 42), b(chart4(), 42);
  for (int i = 0; i < 50; ++i) {
    Point p = a.next(), q = b.next();
    EXPECT_EQ(p.rationals(), q.rationals());
    for (const auto& [s, v] : p.rationals()) {
      EXPECT_LE(abs(v), 1);
      EXPECT_EQ(64 % v.get_den(), 0);
    }
  }
}
