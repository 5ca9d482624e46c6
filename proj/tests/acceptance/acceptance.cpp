// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "../unit/fixtures.hpp"
#include "warpsgk/cli/app.hpp"
#include "warpsgk/cli/example1.hpp"
#include "warpsgk/knproducts/knproducts.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace warpsgk;
using geometry::Curvature;
using geometry::Expr;
using geometry::MetricField;
using geometry::OneFormField;
using recurrence::Structure;
using recurrence::Verdict;
using symexpr::ZeroVerdict;
using warped::WarpedSpec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(const Real& x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << to_double(x);
  return s.str();
}

WarpedSpec random_spec(int k) {
  const std::vector<std::vector<std::vector<std::string>>> bases = {
      {{"2 + exp(x2)"}, {"1/3", "3/2 + exp(-x1)"}},
      {{"1 + exp(x1)"}, {"-1/4", "2 + exp(x1 + x2)/3"}},
      {{"3 + x2^2"}, {"1/2", "1 + exp(x1)"}},
  };
  const std::vector<std::vector<std::vector<std::string>>> fibers = {
      {{"1 + exp(y2)/2"}, {"1/5", "2 + y1^2"}},
      {{"2 + exp(y1)"}, {"0", "1 + exp(y1 - y2)"}},
      {{"1 + y2^2"}, {"1/7", "3 + exp(y1)"}},
  };
  MetricField base = fixtures::metric({"x1", "x2"}, bases[k]);
  return {base, fixtures::metric({"y1", "y2"}, fibers[k]), fixtures::P(base, "exp(x1)")};
}

// f = 1 product of two curved surfaces
WarpedSpec curved_product() {
  return {fixtures::metric({"x1", "x2"}, {{"1 + x1^2"}, {"0", "2 + exp(x2)"}}),
          fixtures::metric({"y1", "y2"}, {{"1 + exp(y2)/2"}, {"1/5", "2 + y1^2"}}), Expr(1)};
}

std::vector<MetricField> property_metrics() {
  return {
      fixtures::example1_base(),
      fixtures::example1_full(),
      fixtures::diag({"x1", "x2", "x3"}, {"1", "1", "1"}),
      fixtures::diag({"t", "y", "z"}, {"1", "exp(2*t)", "exp(2*t)"}),
      fixtures::metric({"x1", "x2"}, {{"1 + x1^2"}, {"x1*x2", "2 + exp(x2)"}}),
      fixtures::metric({"x1", "x2", "x3"}, {{"exp(x3)"}, {"1/2", "1 + x1^2"}, {"0", "x2", "3 + exp(-x1)"}}),
      fixtures::diag({"u", "v", "s", "t"}, {"exp(v)", "exp(u)", "exp(t)", "exp(s)"}),
      warped::build_warped(random_spec(0)),
      warped::build_warped(curved_product()),
  };
}

bool vanishes(const Expr& e) { return symexpr::is_zero(e).verdict != ZeroVerdict::NonZero; }

recurrence::ClassifyOptions classify16() {
  recurrence::ClassifyOptions o;
  o.samples = 16;
  return o;
}

Outcome golden() {
  Outcome o;
  std::size_t proved = 0;
  const auto values = cli::example1::golden_values();
  for (const auto& g : values) {
    const auto z = symexpr::is_zero(g.computed - g.expected);
    if (z.verdict == ZeroVerdict::ProvedZero) ++proved;
    else {
      o.pass = false;
      o.detail += g.name + " " + symexpr::to_string(z.verdict) + "; ";
    }
  }
  o.detail += std::to_string(proved) + "/" + std::to_string(values.size()) + " ProvedZero";
  return o;
}

Outcome base_recurrence() {
  Outcome o;
  const Curvature c(fixtures::example1_base());
  const auto pi = cli::example1::base_pi(c.chart());
  // recovered Π̄ from one nonvanishing component, then checked against every component
  std::vector<Expr> rec(3);
  for (std::size_t m = 0; m < 3; ++m) rec[m] = symexpr::canonicalize(c.nabla_R(0, 1, 0, 1, m) / c.R(0, 1, 0, 1));
  std::size_t closed = 0, full = 0, total = 0;
  for (std::size_t m = 0; m < 3; ++m) closed += symexpr::is_zero(rec[m] - pi[m]).verdict == ZeroVerdict::ProvedZero;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l)
          for (std::size_t m = 0; m < 3; ++m, ++total)
            full += symexpr::is_zero(c.nabla_R(i, j, k, l, m) - rec[m] * c.R(i, j, k, l)).verdict ==
                    ZeroVerdict::ProvedZero;
  const auto cr = recurrence::classify(c, {Structure::K}, classify16());
  const auto& k = *cr.find(Structure::K);
  Real worst = 0, dev = 0;
  std::size_t solved = 0;
  for (const auto& pr : k.points) {
    if (pr.excluded) continue;
    ++solved;
    worst = std::max(worst, pr.solution.max_residual);
    for (std::size_t m = 0; m < 3; ++m)
      dev = std::max(dev, abs(pr.solution.coefficients[m][0] - symexpr::evaluate(pi[m], pr.point)));
  }
  o.pass = closed == 3 && full == total && solved == 16 && worst < Real(1e-12) && dev < Real(1e-12);
  o.detail = "closed form " + std::to_string(closed) + "/3 ProvedZero, recurrence " + std::to_string(full) + "/" +
             std::to_string(total) + " components ProvedZero, " + std::to_string(solved) + " points residual " +
             sci(worst) + ", deviation from closed form " + sci(dev);
  return o;
}

Outcome sgk_verdict() {
  Outcome o;
  const WarpedSpec s = cli::example1::spec();
  const Curvature full(warped::build_warped(s));
  const auto opts = classify16();
  const auto cr = recurrence::classify(full, {Structure::SGK, Structure::HGK, Structure::WGK}, opts);
  const auto& sgk = *cr.find(Structure::SGK);
  const auto& hgk = *cr.find(Structure::HGK);
  const auto& wgk = *cr.find(Structure::WGK);
  const std::vector<std::array<std::string, 4>> psis = {{"1", "0", "0", "0"},
                                                        {"0", "1", "0", "0"},
                                                        {"0", "0", "1", "0"},
                                                        {"0", "0", "0", "1"},
                                                        {"3/7", "-2/5", "5/3", "-1/11"}};
  Real worst = 0, dev = 0;
  std::size_t points = 0;
  const auto pts = recurrence::sample_points(full, opts);
  for (const auto& psi : psis) {
    const auto fam = cli::example1::forms(full.chart(), psi);
    for (const auto& pt : pts) {
      const auto t = recurrence::evaluate_point(full, pt);
      std::vector<std::optional<std::vector<Real>>> fixed(4);
      fixed[2] = geometry::evaluate(fam.Psi, pt);
      const auto sol = recurrence::solve_pointwise_coefficients(
          recurrence::target_at(Structure::SGK, t), recurrence::basis_at(Structure::SGK, t), fixed, opts.tol);
      worst = std::max(worst, sol.max_residual);
      const auto pi = geometry::evaluate(fam.Pi, pt), phi = geometry::evaluate(fam.Phi, pt),
                 th = geometry::evaluate(fam.Theta, pt);
      for (std::size_t m = 0; m < 4; ++m) {
        dev = std::max(dev, abs(sol.coefficients[m][0] - pi[m]));
        dev = std::max(dev, abs(sol.coefficients[m][1] - phi[m]));
        dev = std::max(dev, abs(sol.coefficients[m][3] - th[m]));
      }
      ++points;
    }
  }
  o.pass = sgk.verdict == Verdict::Holds && sgk.max_residual < Real(1e-12) && worst < Real(1e-12) &&
           hgk.verdict == Verdict::Fails && hgk.max_residual > Real(1e-3) && wgk.verdict == Verdict::Fails &&
           wgk.max_residual > Real(1e-3) && pts.size() == 16;
  o.detail = "SGK " + recurrence::to_string(sgk.verdict) + " " + sci(sgk.max_residual) + ", fixed Psi residual " +
             sci(worst) + " over " + std::to_string(points) + " solves (family deviation " + sci(dev) + "), HGK " +
             recurrence::to_string(hgk.verdict) + " " + sci(hgk.max_residual) + ", WGK " +
             recurrence::to_string(wgk.verdict) + " " + sci(wgk.max_residual);
  return o;
}

Outcome formula_oracle() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, WarpedSpec>> cases = {{"example", cli::example1::spec()},
                                                           {"curved product", curved_product()}};
  for (int k = 0; k < 3; ++k) cases.push_back({"random " + std::to_string(k), random_spec(k)});
  symexpr::SamplingOptions so;
  Real worst = 0;
  std::size_t proved = 0, numeric = 0;
  for (const auto& [name, s] : cases) {
    for (const auto& e : warped::crosscheck(s, warped::FormulaVariant::Corrected, so).entries) {
      worst = std::max(worst, e.max_abs);
      if (e.verdict == ZeroVerdict::ProvedZero) ++proved;
      else if (e.verdict == ZeroVerdict::NumericallyZero) ++numeric;
      if (e.verdict == ZeroVerdict::NonZero || e.max_abs >= Real(1e-30)) {
        o.pass = false;
        o.detail += name + " " + e.tensor + " " + symexpr::to_string(e.verdict) + "; ";
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.pass = o.pass && secs < 60;
  std::ostringstream d;
  d << cases.size() << " specs, " << proved << " ProvedZero, " << numeric << " NumericallyZero, max "
    << sci(worst) << ", " << std::fixed << std::setprecision(1) << secs << " s";
  o.detail += d.str();
  return o;
}

Outcome properties() {
  Outcome o;
  std::size_t checked = 0, violations = 0;
  for (const MetricField& g : property_metrics()) {
    if (g.dim() > 4) continue;
    const Curvature c(g);
    for (const auto& chk : geometry::check_identities(c)) {
      checked += chk.checked;
      violations += chk.violations;
      if (chk.violations) o.detail += chk.name + " violated; ";
    }
    const std::size_t n = g.dim();
    const auto gS = knproducts::kulkarni_nomizu(g.tensor(), c.S);
    const auto Sg = knproducts::kulkarni_nomizu(c.S, g.tensor());
    const auto SS = knproducts::kulkarni_nomizu(c.S, c.S);
    const auto gg = knproducts::kulkarni_nomizu(g.tensor(), g.tensor());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) {
            std::vector<Expr> must = {gS(i, j, k, l) - Sg(i, j, k, l)};
            for (const geometry::TensorField* t : {&gS, &SS, &gg}) {
              const auto& T = *t;
              must.push_back(T(i, j, k, l) + T(j, i, k, l));
              must.push_back(T(i, j, k, l) + T(i, j, l, k));
              must.push_back(T(i, j, k, l) - T(k, l, i, j));
              must.push_back(T(i, j, k, l) + T(i, k, l, j) + T(i, l, j, k));
            }
            for (const Expr& e : must) {
              ++checked;
              if (!vanishes(e)) ++violations;
            }
          }
  }
  o.pass = violations == 0;
  o.detail += std::to_string(checked) + " identities checked, " + std::to_string(violations) + " violations";
  return o;
}

Outcome olszak() {
  Outcome o;
  std::vector<std::pair<std::string, MetricField>> cases = {
      {"example base", fixtures::example1_base()},
      {"example", fixtures::example1_full()},
      {"hyperbolic", fixtures::diag({"t", "y", "z"}, {"1", "exp(2*t)", "exp(2*t)"})},
      {"recurrent product", warped::build_warped({fixtures::diag({"u", "v"}, {"1", "1"}), fixtures::example1_base(),
                                                  Expr(1)})},
      {"generic", fixtures::metric({"x1", "x2", "x3"}, {{"exp(x3)"}, {"1/2", "1 + x1^2"}, {"0", "x2", "3 + exp(-x1)"}})},
  };
  for (int k = 0; k < 3; ++k) cases.push_back({"random " + std::to_string(k), warped::build_warped(random_spec(k))});
  std::size_t solved = 0, total = 0;
  Real worst = 0;
  for (const auto& [name, g] : cases) {
    const auto r = recurrence::olszak_degeneracy_check(Curvature(g), classify16());
    for (const auto& p : r.points) {
      ++total;
      if (!p.gk_solved) continue;
      ++solved;
      for (const Real& t : p.theta) worst = std::max(worst, abs(t));
    }
  }
  o.pass = solved > 0 && worst < Real(1e-12);
  o.detail = "GK solved at " + std::to_string(solved) + " of " + std::to_string(total) + " points over " +
             std::to_string(cases.size()) + " metrics, max |Theta| " + sci(worst);
  return o;
}

Outcome equivalence() {
  Outcome o;
  theorems::CheckOptions opts;
  opts.samples = 16;
  const WarpedSpec ex = cli::example1::spec();
  const auto ch = warped::product_chart(ex);
  const auto fam = cli::example1::forms(ch, {"0", "0", "1", "0"});
  std::size_t agree = 0, points = 0;
  auto tally = [&](const theorems::EquivalenceReport& r, const std::string& name) {
    for (const auto& p : r.points) {
      ++points;
      agree += p.agree;
    }
    if (!r.agree) {
      o.pass = false;
      o.detail += name + ": " + r.summary + "; ";
    }
  };
  const auto e1 = theorems::check_equivalence(ex, fam, opts);
  tally(e1, "example");
  if (e1.sgk_hold_count != e1.points.size()) {
    o.pass = false;
    o.detail += "example is not SGK at every point; ";
  }
  for (int k = 0; k < 3; ++k) {
    const WarpedSpec s = random_spec(k);
    tally(theorems::check_equivalence(s, theorems::zero_forms(s), opts), "random " + std::to_string(k));
  }
  std::size_t flipped = 0;
  theorems::CheckOptions quick;
  quick.samples = 4;
  for (int which = 0; which < 4; ++which)
    for (std::size_t m = 0; m < 4; ++m) {
      theorems::FormSet f = fam;
      OneFormField* w[] = {&f.Pi, &f.Phi, &f.Psi, &f.Theta};
      (*w[which])[m] = (*w[which])[m] + Expr(1);
      const auto r = theorems::check_theorem41(ex, f, quick);
      if (std::any_of(r.conditions.begin(), r.conditions.end(),
                      [](const auto& c) { return c.verdict == Verdict::Fails; }))
        ++flipped;
    }
  o.pass = o.pass && flipped == 16;
  o.detail += std::to_string(agree) + "/" + std::to_string(points) + " points agree over 4 specs, " +
              std::to_string(flipped) + "/16 perturbations flip a condition";
  return o;
}

Outcome discrepancies() {
  Outcome o;
  std::ostringstream out, err;
  const int code = cli::run({"warpsgk", "example1", "--format", "json"}, out, err);
  const auto j = nlohmann::json::parse(out.str());
  bool s11 = false, s22 = false, c2i = false, c4ii = false;
  for (const auto& d : j["paper_discrepancies"]) {
    const std::string t = d.value("tensor", "");
    const std::string c = d.value("condition", "");
    s11 = s11 || t == "Sbar_11";
    s22 = s22 || t == "Sbar_22";
    c2i = c2i || (c == "C2.i" && d.value("supported", "") == "corrected");
    c4ii = c4ii || (c == "C4.ii" && d.value("supported", "") == "corrected");
  }
  std::string preferred;
  for (const auto& v : j["verdicts"])
    if (v["name"] == "preferred reading (plane companion)") preferred = v["verdict"];
  o.pass = code == 0 && s11 && s22 && c2i && c4ii && preferred == "corrected";
  o.detail = std::string("example1 exit ") + std::to_string(code) + ", Sbar_11 " + (s11 ? "flagged" : "missed") +
             ", Sbar_22 " + (s22 ? "flagged" : "missed") + ", sign reading reported: " +
             (preferred.empty() ? "none" : preferred) + " (C2.i " + (c2i ? "yes" : "no") + ", C4.ii " +
             (c4ii ? "yes" : "no") + ")";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden component values", golden},
      {"base recurrence form", base_recurrence},
      {"SGK verdict, not HGK or WGK", sgk_verdict},
      {"block formula oracle", formula_oracle},
      {"curvature property suite", properties},
      {"GK degeneracy", olszak},
      {"condition equivalence", equivalence},
      {"discrepancy detection", discrepancies},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  return failures ? 1 : 0;
}
