#include "warpsgk/cli/example1.hpp"

#include "warpsgk/knproducts/knproducts.hpp"
#include "warpsgk/symexpr/parse.hpp"

namespace warpsgk::cli::example1 {

using geometry::Chart;
using geometry::Curvature;
using geometry::Expr;
using geometry::MetricField;
using symexpr::parse_expr;

namespace {

MetricField diag(const std::vector<std::string>& names, const std::vector<std::string>& entries) {
  const Chart ch(names);
  std::vector<Expr> d;
  for (const auto& e : entries) d.push_back(parse_expr(e, ch));
  return MetricField::diagonal(ch, d);
}

std::string subst(std::string s, const std::string& value) {
  const std::string key = "psi", rep = "(" + value + ")";
  for (std::size_t at = s.find(key); at != std::string::npos; at = s.find(key, at + rep.size())) s.replace(at, 3, rep);
  return s;
}

const std::array<std::string, 4> kPi = {
    "(psi*exp(x1)*(exp(x2) - 2) + 2*psi*cosh(x1 - x2) - (2*psi + 1)*exp(x2) + 2*psi) / (2*(exp(x1) + exp(x2)))",
    "(psi*(exp(x1) - 2)*exp(x2) + 2*psi*cosh(x1 - x2) - (2*psi + 1)*exp(x1) + 2*psi) / (2*(exp(x1) + exp(x2)))",
    "psi*exp(-x1 - x2)*(-exp(x1 + x2) + exp(x1) + exp(x2))^2 / (2*(exp(x1) + exp(x2)))",
    "psi*exp(-x1 - x2)*(-exp(x1 + x2) + exp(x1) + exp(x2))^2 / (2*(exp(x1) + exp(x2)))",
};
const std::array<std::string, 4> kPhi = {
    "(psi*(-exp(x1 + x2)) + 2*psi*cosh(x1 - x2) + 2*psi + exp(x2))"
    " / (-2*cosh(x1 - x2) + sinh(x1) + cosh(x1) + sinh(x2) + cosh(x2) - 2)",
    "exp(x1)*((psi*exp(x1) + 1)/(exp(x1) + exp(x2)) - psi + 1/((exp(x1) - 1)*exp(x2) - exp(x1))) - psi",
    "-(psi*(exp(x1 + x2) + exp(x1) + exp(x2)))/(exp(x1) + exp(x2))",
    "-(psi*(exp(x1 + x2) + exp(x1) + exp(x2)))/(exp(x1) + exp(x2))",
};
const std::array<std::string, 4> kTheta = {
    "(-psi*exp(x1 - x2) + 2*psi*exp(x2)*sinh(x1) - 2*psi + exp(x2)) / (16*(-exp(x1 + x2) + exp(x1) + exp(x2)))",
    "(1/16)*(-psi*exp(-x1) - psi*exp(-x2) - psi + exp(x1)/(-exp(x1 + x2) + exp(x1) + exp(x2)))",
    "-(1/16)*psi*exp(-x1 - x2)*(exp(x1 + x2) + exp(x1) + exp(x2))",
    "-(1/16)*psi*exp(-x1 - x2)*(exp(x1 + x2) + exp(x1) + exp(x2))",
};

}  // namespace

warped::WarpedSpec spec() {
  const MetricField base = diag({"x1", "x2", "x3"}, {"exp(x2)", "exp(x1)", "1"});
  return {base, diag({"x4"}, {"1"}), parse_expr("exp(x3)", base.chart())};
}

warped::WarpedSpec plane_spec() {
  const MetricField base = diag({"x1", "x2", "x3"}, {"exp(x2)", "exp(x1)", "1"});
  return {base, diag({"y1", "y2"}, {"1", "1"}), parse_expr("exp(x3)", base.chart())};
}

theorems::FormSet forms(const Chart& ch, const std::array<std::string, 4>& psi) {
  theorems::FormSet f{geometry::OneFormField(ch), geometry::OneFormField(ch), geometry::OneFormField(ch),
                      geometry::OneFormField(ch)};
  for (std::size_t i = 0; i < 4; ++i) {
    f.Pi[i] = parse_expr(subst(kPi[i], psi[i]), ch);
    f.Phi[i] = parse_expr(subst(kPhi[i], psi[i]), ch);
    f.Psi[i] = parse_expr(psi[i], ch);
    f.Theta[i] = parse_expr(subst(kTheta[i], psi[i]), ch);
  }
  return f;
}

std::vector<Expr> base_pi(const Chart& ch) {
  return {parse_expr("-exp(x2)/(exp(x1) + exp(x2))", ch), parse_expr("-exp(x1)/(exp(x1) + exp(x2))", ch), Expr(0)};
}

std::vector<Golden> golden_values() {
  const warped::WarpedSpec s = spec();
  const Curvature base(s.base);
  const Curvature full(warped::build_warped(s));
  const Chart& ch = full.chart();
  const auto gg = knproducts::kulkarni_nomizu(full.g.tensor(), full.g.tensor());
  const auto gS = knproducts::kulkarni_nomizu(full.g.tensor(), full.S);
  const auto SS = knproducts::kulkarni_nomizu(full.S, full.S);
  auto P = [&](const char* t) { return parse_expr(t, ch); };
  return {
      {"Rbar_1212", base.R(0, 1, 0, 1), P("-(exp(x1) + exp(x2))/4")},
      {"R_3434", full.R(2, 3, 2, 3), P("-exp(x3)/4")},
      {"S_33", full.S(2, 2), P("1/4")},
      {"S_44", full.S(3, 3), P("exp(x3)/4")},
      {"R_1212,1", full.nabla_R(0, 1, 0, 1, 0), P("exp(x2)/4")},
      {"R_1212,2", full.nabla_R(0, 1, 0, 1, 1), P("exp(x1)/4")},
      {"(g^g)_1212", gg(0, 1, 0, 1), P("-2*exp(x1 + x2)")},
      {"(g^S)_3434", gS(2, 3, 2, 3), P("-exp(x3)/2")},
      {"(S^S)_3434", SS(2, 3, 2, 3), P("-exp(x3)/8")},
  };
}

std::vector<PrintedEntry> printed_base_ricci() {
  const warped::WarpedSpec s = spec();
  const Curvature base(s.base);
  const Chart& ch = base.chart();
  const std::vector<std::pair<std::string, std::pair<std::size_t, std::string>>> printed = {
      {"Sbar_11", {0, "(1 + exp(x2 - x2))/4"}},
      {"Sbar_22", {1, "exp(x1 - x2)/4"}},
  };
  std::vector<PrintedEntry> out;
  for (const auto& [name, v] : printed) {
    const Expr& got = base.S(v.first, v.first);
    PrintedEntry e;
    e.name = name;
    e.printed = v.second;
    e.computed = got.str();
    e.matches = symexpr::canonicalize(parse_expr(v.second, ch) - got).is_zero_constant();
    out.push_back(e);
  }
  return out;
}

}  // namespace warpsgk::cli::example1
