#include "warpsgk/cli/app.hpp"

#include "warpsgk/cli/example1.hpp"
#include "warpsgk/cli/specfile.hpp"
#include "warpsgk/symexpr/parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

namespace warpsgk::cli {

using json = nlohmann::ordered_json;
using geometry::Curvature;
using geometry::Expr;
using recurrence::Structure;
using recurrence::Verdict;
using symexpr::ZeroVerdict;

namespace {

double dbl(const Real& x) { return to_double(x); }

std::string sci(const Real& x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << to_double(x);
  return s.str();
}

std::string point_str(const geometry::Point& p) { return p.str(); }

struct Settings {
  std::size_t samples = 16;
  std::uint64_t seed = 20240611;
  double tau_rel = 1e-9;
  double tau_abs = 1e-12;
  std::string format = "text";
};

/// Collects one command's findings for both renderings.
struct Report {
  std::string command;
  Settings settings;
  json verdicts = json::array();
  json residuals = json::array();
  json recovered_forms = json::array();
  json flags = json::array();
  json discrepancies = json::array();
  std::vector<std::string> lines;
  bool failed = false;

  void line(const std::string& s) { lines.push_back(s); }
  void verdict(const std::string& name, const std::string& v, const Real& residual, const std::string& detail = "") {
    json j = {{"name", name}, {"verdict", v}, {"max_residual", dbl(residual)}};
    if (!detail.empty()) j["detail"] = detail;
    verdicts.push_back(j);
    std::ostringstream s;
    s << "  " << std::left << std::setw(40) << name << std::setw(20) << v << "max residual " << sci(residual);
    if (!detail.empty()) s << "  " << detail;
    line(s.str());
  }
  /// An expectation: `ok` decides the exit code.
  void expect(const std::string& name, const std::string& got, const std::string& want, bool ok, const Real& residual,
              const std::string& detail = "") {
    json j = {{"name", name}, {"verdict", got}, {"expected", want}, {"ok", ok}, {"max_residual", dbl(residual)}};
    if (!detail.empty()) j["detail"] = detail;
    verdicts.push_back(j);
    std::ostringstream s;
    s << "  " << (ok ? "ok   " : "FAIL ") << std::left << std::setw(40) << name << std::setw(20) << got
      << "max residual " << sci(residual);
    if (!detail.empty()) s << "  " << detail;
    line(s.str());
    failed = failed || !ok;
  }
  void flag(const std::string& s) {
    flags.push_back(s);
    line("  flag: " + s);
  }
  void discrepancy(json j, const std::string& text) {
    discrepancies.push_back(std::move(j));
    line("  discrepancy: " + text);
  }

  json to_json() const {
    return {{"schema", 1},
            {"command", command},
            {"seed", settings.seed},
            {"tolerances",
             {{"tau_rel", settings.tau_rel}, {"tau_abs", settings.tau_abs}, {"samples", settings.samples}}},
            {"verdicts", verdicts},
            {"residuals", residuals},
            {"recovered_forms", recovered_forms},
            {"flags", flags},
            {"paper_discrepancies", discrepancies},
            {"exit", failed ? kExitFails : kExitOk}};
  }
};

recurrence::Tolerances tolerances(const Settings& s) {
  recurrence::Tolerances t;
  t.tau_rel = s.tau_rel;
  t.tau_abs = s.tau_abs;
  return t;
}

recurrence::ClassifyOptions classify_options(const Settings& s) {
  recurrence::ClassifyOptions o;
  o.samples = s.samples;
  o.seed = s.seed;
  o.tol = tolerances(s);
  return o;
}

theorems::CheckOptions check_options(const Settings& s) {
  theorems::CheckOptions o;
  o.samples = s.samples;
  o.seed = s.seed;
  o.tol = tolerances(s);
  return o;
}

std::string zero_name(ZeroVerdict z) { return symexpr::to_string(z); }

void add_classification(Report& rep, const recurrence::ClassificationReport& cr) {
  for (const auto& r : cr.results) {
    std::ostringstream d;
    d << "rank " << r.min_rank << ".." << r.max_rank;
    if (!r.explanation.empty()) d << "; " << r.explanation;
    rep.verdict(recurrence::to_string(r.structure), recurrence::to_string(r.verdict), r.max_residual, d.str());
    if (r.verdict == Verdict::Fails) rep.failed = true;
    if (r.verdict != Verdict::Holds && r.verdict != Verdict::HoldsDegenerately) continue;
    for (const auto& pr : r.points) {
      if (pr.excluded) continue;
      json coeffs = json::object();
      for (std::size_t b = 0; b < r.coefficient_names.size(); ++b) {
        json col = json::array();
        for (const auto& row : pr.solution.coefficients) col.push_back(dbl(row[b]));
        coeffs[r.coefficient_names[b]] = col;
      }
      rep.recovered_forms.push_back({{"structure", recurrence::to_string(r.structure)},
                                     {"point", point_str(pr.point)},
                                     {"coefficients", coeffs},
                                     {"residual", dbl(pr.solution.max_residual)}});
    }
  }
}

// ---- commands ----

void cmd_curvature(Report& rep, const SpecFile& sf) {
  const Curvature c(sf.metric_field());
  const std::size_t n = c.dim();
  std::ostringstream head;
  head << "dimension " << n << ", chart";
  for (const auto& nm : c.chart().names()) head << " " << nm;
  rep.line(head.str());
  rep.line("scalar curvature: " + symexpr::canonicalize(c.kappa).str());
  rep.line("Riemann components (fundamental domain, nonzero):");
  for (const auto& idx : geometry::fundamental_domain(geometry::SymmetryClass::RiemannType, n, 4)) {
    const Expr& e = c.R(idx[0], idx[1], idx[2], idx[3]);
    if (e.is_zero_constant()) continue;
    const std::string name = "R_" + std::to_string(idx[0] + 1) + std::to_string(idx[1] + 1) +
                             std::to_string(idx[2] + 1) + std::to_string(idx[3] + 1);
    rep.line("  " + name + " = " + e.str());
    rep.residuals.push_back({{"name", name}, {"value", e.str()}});
  }
  rep.line("Ricci components (nonzero, i <= j):");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!c.S(i, j).is_zero_constant()) {
        const std::string name = "S_" + std::to_string(i + 1) + std::to_string(j + 1);
        rep.line("  " + name + " = " + c.S(i, j).str());
        rep.residuals.push_back({{"name", name}, {"value", c.S(i, j).str()}});
      }
  std::size_t nz = 0;
  for (const Expr& e : c.nabla_R.components.data()) nz += !e.is_zero_constant();
  rep.line("nonzero components of the covariant derivative of R: " + std::to_string(nz));
  if (c.is_flat()) rep.flag("flat metric");
  rep.line("identities:");
  symexpr::SamplingOptions so;
  so.seed = rep.settings.seed;
  for (const auto& chk : geometry::check_identities(c, so)) {
    const bool ok = chk.violations == 0;
    rep.verdict(chk.name, ok ? "Holds" : "Fails", Real(0),
                std::to_string(chk.checked) + " components, " + std::to_string(chk.violations) + " violations");
    rep.failed = rep.failed || !ok;
  }
}

void cmd_classify(Report& rep, const SpecFile& sf, const std::string& structures, const std::string& eta_file) {
  auto opts = classify_options(rep.settings);
  std::vector<Structure> list;
  if (structures.empty()) {
    list = {Structure::K, Structure::ConcircularRecurrent, Structure::GK, Structure::HGK, Structure::WGK,
            Structure::SGK};
  } else {
    std::stringstream ss(structures);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const auto s = recurrence::parse_structure(tok);
      if (!s) throw CLI::ValidationError("--structures", "unknown structure '" + tok + "'");
      list.push_back(*s);
    }
  }
  if (!eta_file.empty()) opts.eta = parse_eta(eta_file, sf.metric_field().chart());
  else if (sf.eta) opts.eta = sf.eta;
  if (opts.eta && structures.empty()) list.push_back(Structure::QGK);
  const Curvature c(sf.metric_field());
  const auto cr = recurrence::classify(c, list, opts);
  if (cr.flat) rep.flag("flat metric: every structure is vacuous");
  rep.line("classification at " + std::to_string(cr.points.size()) + " seeded points:");
  add_classification(rep, cr);
  if (std::count(list.begin(), list.end(), Structure::GK)) {
    const auto ol = recurrence::olszak_degeneracy_check(c, opts);
    rep.flag("GK degeneracy: " + ol.summary);
  }
}

void cmd_roter(Report& rep, const SpecFile& sf) {
  const auto cr =
      recurrence::classify(Curvature(sf.metric_field()), {Structure::Roter, Structure::GeneralizedRoter},
                           classify_options(rep.settings));
  if (cr.flat) rep.flag("flat metric: every structure is vacuous");
  add_classification(rep, cr);
}

void cmd_warped_check(Report& rep, const SpecFile& sf) {
  if (!sf.warped) throw CLI::ValidationError("warped-check", sf.path + " has no [warped] section");
  symexpr::SamplingOptions so;
  so.samples = rep.settings.samples;
  so.seed = rep.settings.seed;
  const auto cc = warped::crosscheck(*sf.warped, warped::FormulaVariant::Corrected, so);
  rep.line("block formulas against the direct computation:");
  for (const auto& e : cc.entries) {
    rep.verdict(e.tensor, zero_name(e.verdict), e.max_abs,
                e.verdict == ZeroVerdict::NonZero ? "first mismatch in block " + e.block : "");
    rep.failed = rep.failed || e.verdict == ZeroVerdict::NonZero;
  }
  for (const auto& d : warped::printed_discrepancies(*sf.warped, so)) {
    json idx = json::array();
    for (auto i : d.index) idx.push_back(i + 1);
    rep.discrepancy({{"tensor", d.tensor}, {"block", d.block}, {"index", idx}, {"printed", d.printed},
                     {"corrected", d.corrected}},
                    d.tensor + " [" + d.block + "]: printed " + d.printed + "; direct computation supports " +
                        d.corrected);
  }
}

void add_conditions(Report& rep, const theorems::ConditionReport& r, const std::string& prefix) {
  for (const auto& c : r.conditions)
    rep.verdict(prefix + c.name, recurrence::to_string(c.verdict), c.max_residual, c.statement);
  rep.failed = rep.failed || r.overall == Verdict::Fails;
}

void cmd_theorem41(Report& rep, const SpecFile& sf, const std::string& forms_file, const std::string& reading,
                   const std::string& variant, bool equivalence, bool consequences) {
  if (!sf.warped) throw CLI::ValidationError("theorem41", sf.path + " has no [warped] section");
  const auto chart = sf.metric_field().chart();
  theorems::FormSet forms = forms_file.empty() ? (sf.forms ? *sf.forms : theorems::zero_forms(*sf.warped))
                                               : parse_forms(forms_file, chart);
  const auto opts = check_options(rep.settings);
  if (!variant.empty()) {
    const auto v = theorems::parse_corollary_variant(variant);
    if (!v) throw CLI::ValidationError("--variant", "unknown variant '" + variant + "'");
    const auto cr = theorems::check_corollary_variant(*sf.warped, *v, forms, opts, reading == "as-printed");
    rep.line(theorems::to_string(*v) + " conditions (" + cr.conditions.reading + " reading):");
    add_conditions(rep, cr.conditions, "");
    for (const auto& nt : cr.conditions.notes) rep.flag(nt);
    rep.verdict("coherent with the specialized theorem", cr.coherent ? "Holds" : "Fails", Real(0));
    rep.failed = rep.failed || !cr.coherent;
  } else {
    const auto r = theorems::check_theorem41(
        *sf.warped, forms, opts,
        reading == "as-printed" ? warped::FormulaVariant::AsPrinted : warped::FormulaVariant::Corrected);
    rep.line("warped product SGK conditions (" + r.reading + " reading):");
    add_conditions(rep, r, "");
  }
  if (consequences) {
    const auto cr = theorems::corollary_consequence_report(*sf.warped, forms, opts);
    if (rep.failed)
      rep.flag("the supplied forms do not satisfy the conditions; the consequences below are not implied by them");
    rep.line("consequences on their regions:");
    for (const auto& c : cr.items) {
      std::string d = c.region + ", " + std::to_string(c.region_points) + " points";
      if (!c.detail.empty()) d += "; " + c.detail;
      rep.verdict(c.name, recurrence::to_string(c.verdict), c.max_residual, d);
    }
    if (!cr.fiber_forms.empty()) {
      json fj = json::object();
      const char* names[] = {"Pi", "Phi", "Psi", "Theta"};
      for (std::size_t b = 0; b < cr.fiber_forms.size() && b < 4; ++b) {
        json col = json::array();
        for (const Real& v : cr.fiber_forms[b]) col.push_back(dbl(v));
        fj[names[b]] = col;
      }
      rep.recovered_forms.push_back({{"structure", "fiber SGK"}, {"coefficients", fj}});
    }
    for (const auto& [name, res] : cr.fiber_form_candidates) {
      rep.residuals.push_back({{"name", "fiber forms " + name}, {"residual", dbl(res)}});
      rep.line("  fiber forms, " + name + " formula: residual " + sci(res));
    }
  }
  if (equivalence) {
    const auto eq = theorems::check_equivalence(*sf.warped, forms, opts);
    Real worst = 0;
    for (const auto& p : eq.points) worst = std::max(worst, std::min(p.sgk_residual, p.condition_residual));
    rep.verdict("equivalence with the direct SGK solve", eq.agree ? "Holds" : "Fails", worst, eq.summary);
    rep.failed = rep.failed || !eq.agree;
  }
}

void cmd_example1(Report& rep) {
  const auto opts = classify_options(rep.settings);
  const auto copts = check_options(rep.settings);
  const warped::WarpedSpec s = example1::spec();
  const Curvature base(s.base);
  const Curvature full(warped::build_warped(s));
  const geometry::Chart& ch = full.chart();

  rep.line("published component values:");
  for (const auto& g : example1::golden_values()) {
    const auto z = symexpr::is_zero(g.computed - g.expected);
    rep.expect(g.name, zero_name(z.verdict), "ProvedZero", z.verdict == ZeroVerdict::ProvedZero, z.max_abs,
               g.computed.str());
  }

  rep.line("base recurrence:");
  {
    const auto cr = recurrence::classify(base, {Structure::K}, opts);
    const auto& k = *cr.find(Structure::K);
    rep.expect("base K", recurrence::to_string(k.verdict), "Holds", k.verdict == Verdict::Holds, k.max_residual);
    const auto pi = example1::base_pi(base.chart());
    ZeroVerdict worst = ZeroVerdict::ProvedZero;
    for (std::size_t m = 0; m < 3; ++m) {
      // Π̄_m = R̄_1212,m / R̄_1212 on the base
      const Expr got = symexpr::canonicalize(base.nabla_R(0, 1, 0, 1, m) / base.R(0, 1, 0, 1));
      const auto z = symexpr::is_zero(got - pi[m]);
      if (z.verdict != ZeroVerdict::ProvedZero) worst = z.verdict;
    }
    rep.expect("base Pi closed form", zero_name(worst), "ProvedZero", worst == ZeroVerdict::ProvedZero, Real(0));
  }

  rep.line("structure of the warped product:");
  {
    const auto cr = recurrence::classify(full, {Structure::K, Structure::HGK, Structure::WGK, Structure::SGK}, opts);
    for (auto [st, want] : {std::pair{Structure::SGK, Verdict::Holds}, {Structure::HGK, Verdict::Fails},
                            {Structure::WGK, Verdict::Fails}, {Structure::K, Verdict::Fails}}) {
      const auto& r = *cr.find(st);
      bool ok = r.verdict == want;
      if (want == Verdict::Fails) ok = ok && r.max_residual > Real(1e-3);
      if (want == Verdict::Holds) ok = ok && r.max_residual < Real(1e-12);
      rep.expect(recurrence::to_string(st), recurrence::to_string(r.verdict), recurrence::to_string(want), ok,
                 r.max_residual);
    }
    // fixed Ψ: the remaining coefficients are determined and match the family
    const std::vector<std::array<std::string, 4>> psis = {
        {"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"0", "0", "1", "0"}, {"0", "0", "0", "1"},
        {"3/7", "-2/5", "5/3", "-1/11"}};
    for (const auto& psi : psis) {
      const auto fam = example1::forms(ch, psi);
      Real worst_res = 0, worst_dev = 0;
      for (const auto& pt : recurrence::sample_points(full, opts)) {
        const auto t = recurrence::evaluate_point(full, pt);
        const auto ps = geometry::evaluate(fam.Psi, pt);
        std::vector<std::optional<std::vector<Real>>> fixed(4);
        fixed[2] = ps;
        const auto sol = recurrence::solve_pointwise_coefficients(recurrence::target_at(Structure::SGK, t),
                                                                  recurrence::basis_at(Structure::SGK, t), fixed,
                                                                  opts.tol);
        worst_res = std::max(worst_res, sol.max_residual);
        const auto pi = geometry::evaluate(fam.Pi, pt), phi = geometry::evaluate(fam.Phi, pt),
                   th = geometry::evaluate(fam.Theta, pt);
        for (std::size_t m = 0; m < 4; ++m)
          for (auto [b, v] : {std::pair{0, pi[m]}, {1, phi[m]}, {3, th[m]}})
            worst_dev = std::max(worst_dev, abs(sol.coefficients[m][b] - v) / std::max(Real(1), abs(v)));
      }
      const std::string name = "SGK with Psi = (" + psi[0] + ", " + psi[1] + ", " + psi[2] + ", " + psi[3] + ")";
      rep.expect(name, worst_res < Real(1e-12) ? "Holds" : "Fails", "Holds",
                 worst_res < Real(1e-12) && worst_dev < Real(1e-12), worst_res,
                 "family deviation " + sci(worst_dev));
    }
    const auto ol = recurrence::olszak_degeneracy_check(full, opts);
    rep.flag("GK degeneracy: " + ol.summary);
  }

  rep.line("block formulas:");
  {
    symexpr::SamplingOptions so;
    so.samples = rep.settings.samples;
    so.seed = rep.settings.seed;
    const auto cc = warped::crosscheck(s, warped::FormulaVariant::Corrected, so);
    for (const auto& e : cc.entries)
      rep.expect("crosscheck " + e.tensor, zero_name(e.verdict), "ProvedZero or NumericallyZero",
                 e.verdict != ZeroVerdict::NonZero, e.max_abs);
    for (const auto& d : warped::printed_discrepancies(s, so)) {
      json idx = json::array();
      for (auto i : d.index) idx.push_back(i + 1);
      rep.discrepancy({{"kind", "block formula"}, {"tensor", d.tensor}, {"block", d.block}, {"index", idx},
                       {"printed", d.printed}, {"corrected", d.corrected}},
                      d.tensor + " [" + d.block + "]: printed " + d.printed + "; supported " + d.corrected);
    }
  }

  rep.line("base Ricci entries as printed:");
  for (const auto& e : example1::printed_base_ricci()) {
    if (e.matches) continue;
    rep.discrepancy({{"kind", "component value"}, {"tensor", e.name}, {"printed", e.printed}, {"computed", e.computed}},
                    e.name + ": printed " + e.printed + ", computed " + e.computed);
  }

  rep.line("characterization conditions with Psi = (0, 0, 1, 0):");
  {
    const auto fam = example1::forms(ch, {"0", "0", "1", "0"});
    const auto r = theorems::check_theorem41(s, fam, copts);
    for (const auto& c : r.conditions)
      rep.expect(c.name, recurrence::to_string(c.verdict), "Holds", c.verdict == Verdict::Holds, c.max_residual);
    const auto eq = theorems::check_equivalence(s, fam, copts);
    rep.expect("equivalence with the direct SGK solve", eq.agree ? "Holds" : "Fails", "Holds", eq.agree, Real(0),
               eq.summary);
  }

  rep.line("sign readings of the characterization (fiber-curvature and warping groups):");
  {
    const auto here = theorems::compare_readings(s, copts);
    rep.flag("one-dimensional fiber: readings " + std::string(here.distinguishable ? "separated" : "not separated") +
             " on this example");
    const auto plane = theorems::compare_readings(example1::plane_spec(), copts);
    rep.expect("preferred reading (plane companion)", plane.preferred, "corrected", plane.preferred == "corrected",
               Real(0));
    const std::map<std::string, std::pair<std::string, std::string>> texts = {
        {"C2.i", {"-1/2 f^2 (P Pibar + dP) g~^g~", "+1/2 f^2 (P Pibar - dP) g~^g~"}},
        {"C2.ii", {"(Q Phi~ + f Psi~) g~^S~ and -1/2 f^2 P Pi~ g~^g~", "(2Q Phi~ + f Psi~) g~^S~ and +1/2 f^2 P Pi~ g~^g~"}},
        {"C4.ii", {"df (x) R~ = f^2 Theta P (x) G~", "df (x) R~ = f^2 dP (x) G~"}},
    };
    for (const auto& row : plane.rows) {
      rep.residuals.push_back(
          {{"name", "reading " + row.name}, {"corrected", dbl(row.corrected)}, {"as_printed", dbl(row.printed)}});
      const auto it = texts.find(row.name);
      if (it == texts.end() || row.printed < Real(rep.settings.tau_rel)) continue;
      rep.discrepancy({{"kind", "sign reading"}, {"condition", row.name}, {"printed", it->second.first},
                       {"corrected", it->second.second}, {"printed_residual", dbl(row.printed)},
                       {"corrected_residual", dbl(row.corrected)}, {"supported", plane.preferred}},
                      row.name + ": printed " + it->second.first + " fails (" + sci(row.printed) + "); " +
                          it->second.second + " holds (" + sci(row.corrected) + ")");
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature, recurrence structures and warped products"};
  app.require_subcommand(1);
  Settings st;
  std::string spec_path, structures, eta_file, forms_file, reading = "corrected", variant;
  bool equivalence = false, consequences = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", st.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--samples", st.samples, "sample points")->check(CLI::Range(1, 100000));
    sub->add_option("--seed", st.seed, "sampling seed");
    sub->add_option("--tol", st.tau_rel, "relative residual tolerance");
    sub->add_option("--tol-abs", st.tau_abs, "absolute tolerance");
  };
  auto* curvature = app.add_subcommand("curvature", "curvature tensors and identity checks");
  curvature->add_option("spec", spec_path)->required();
  auto* classify = app.add_subcommand("classify", "recurrence structures at seeded points");
  classify->add_option("spec", spec_path)->required();
  classify->add_option("--structures", structures, "comma list of k,ck,gk,qgk,hgk,wgk,sgk,rt,grt");
  classify->add_option("--eta", eta_file, "file with an [eta] section");
  auto* warped_check = app.add_subcommand("warped-check", "block formulas against the direct computation");
  warped_check->add_option("spec", spec_path)->required();
  auto* theorem = app.add_subcommand("theorem41", "warped product SGK conditions for given forms");
  theorem->add_option("spec", spec_path)->required();
  theorem->add_option("--forms", forms_file, "file with a [forms] section");
  theorem->add_option("--reading", reading, "corrected or as-printed")
      ->check(CLI::IsMember({"corrected", "as-printed"}));
  theorem->add_option("--variant", variant, "K, HGK, WGK, product-SGK, product-K, product-HGK, product-WGK");
  theorem->add_flag("--equivalence", equivalence, "also compare with the direct SGK solve");
  theorem->add_flag("--consequences", consequences, "region checks and fiber form candidates");
  auto* ex1 = app.add_subcommand("example1", "golden suite for the 4-dimensional example");
  auto* roter = app.add_subcommand("roter", "Roter and generalized Roter decomposition");
  roter->add_option("spec", spec_path)->required();
  // shared flags are accepted before or after the subcommand
  common(&app);
  for (auto* sub : {curvature, classify, warped_check, theorem, ex1, roter}) sub->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Report rep;
  rep.settings = st;
  try {
    if (*curvature) {
      rep.command = "curvature";
      cmd_curvature(rep, parse_spec(spec_path));
    } else if (*classify) {
      rep.command = "classify";
      cmd_classify(rep, parse_spec(spec_path), structures, eta_file);
    } else if (*warped_check) {
      rep.command = "warped-check";
      cmd_warped_check(rep, parse_spec(spec_path));
    } else if (*theorem) {
      rep.command = "theorem41";
      cmd_theorem41(rep, parse_spec(spec_path), forms_file, reading, variant, equivalence, consequences);
    } else if (*ex1) {
      rep.command = "example1";
      cmd_example1(rep);
    } else if (*roter) {
      rep.command = "roter";
      cmd_roter(rep, parse_spec(spec_path));
    }
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (st.format == "json") {
    out << rep.to_json().dump(2) << "\n";
  } else {
    out << rep.command << " (seed " << st.seed << ", " << st.samples << " samples, tau_rel " << st.tau_rel
        << ", tau_abs " << st.tau_abs << ")\n";
    for (const auto& l : rep.lines) out << l << "\n";
    out << (rep.failed ? "result: FAILS" : "result: OK") << "\n";
  }
  return rep.failed ? kExitFails : kExitOk;
}

}  // namespace warpsgk::cli
