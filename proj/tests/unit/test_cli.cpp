#include "warpsgk/cli/app.hpp"
#include "warpsgk/cli/example1.hpp"
#include "warpsgk/cli/specfile.hpp"
#include "warpsgk/symexpr/parse.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

using namespace warpsgk;
using namespace warpsgk::cli;
using warpsgk::cli::run;

namespace {

const std::string kSpecs = WARPSGK_SPECS_DIR;

std::string at(const std::string& file) { return kSpecs + "/" + file; }

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "warpsgk");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string error_of(std::string_view text) {
  try {
    parse_spec_text(text, "t.spec");
  } catch (const SpecError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(SpecFile, BaseOfExampleParsesToItsMetric) {
  const SpecFile sf = parse_spec(at("example1_base.spec"));
  const auto& g = sf.metric_field();
  ASSERT_EQ(g.dim(), 3u);
  const auto want = example1::spec().base;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(g(i, j).str(), want(i, j).str()) << i << j;
}

TEST(SpecFile, WarpedSectionAssemblesTheProduct) {
  const SpecFile sf = parse_spec(at("example1_warped.spec"));
  ASSERT_TRUE(sf.warped.has_value());
  const auto& g = sf.metric_field();
  ASSERT_EQ(g.dim(), 4u);
  EXPECT_EQ(g(3, 3).str(), symexpr::parse_expr("exp(x3)", g.chart()).str());
}

TEST(SpecFile, IndexSpellingsAgree) {
  const auto a = parse_spec_text("[chart]\nu v\n[metric]\ng11 = 1\ng22 = u^2\n", "a");
  const auto b = parse_spec_text("[chart]\nu v\n[metric]\ng_1_1 = 1\ng_v_v = u^2\n", "b");
  EXPECT_EQ(a.metric_field()(1, 1).str(), b.metric_field()(1, 1).str());
}

TEST(SpecFile, EmptyMetricIsRejected) {
  EXPECT_NE(error_of("[chart]\nx y\n[metric]\n").find("no components"), std::string::npos);
  EXPECT_NE(error_of("[chart]\nx y\n").find("no components"), std::string::npos);
}

TEST(SpecFile, ConflictingSymmetricPartnersAreRejected) {
  const std::string e = error_of("[chart]\nx y\n[metric]\ng11 = 1\ng22 = 1\ng12 = x\ng21 = y\n");
  EXPECT_NE(e.find("symmetry conflict"), std::string::npos) << e;
  EXPECT_NE(e.find("t.spec:7:1:"), std::string::npos) << e;
}

TEST(SpecFile, AgreeingPartnersAreAccepted) {
  EXPECT_EQ(error_of("[chart]\nx y\n[metric]\ng11 = 1\ng22 = 1\ng12 = x\ng21 = x\n"), "");
}

TEST(SpecFile, ExpressionErrorsCarryAColumn) {
  const std::string e = error_of("[chart]\nx y\n[metric]\ng11 = 1 + * x\ng22 = 1\n");
  EXPECT_NE(e.find("t.spec:4:"), std::string::npos) << e;
}

TEST(SpecFile, UnknownSymbolAndSectionAreRejected) {
  EXPECT_NE(error_of("[chart]\nx y\n[metric]\ng11 = z\ng22 = 1\n"), "");
  EXPECT_NE(error_of("[chart]\nx y\n[metrik]\ng11 = 1\n").find("unknown section"), std::string::npos);
}

TEST(SpecFile, SquaredConventionIsRefused) {
  const std::string e = error_of("[warped]\nbase = a\nfiber = b\nf = 1\nconvention = squared\n");
  EXPECT_NE(e.find("unsquared"), std::string::npos) << e;
}

TEST(SpecFile, FormsFileMatchesTheFamily) {
  const SpecFile sf = parse_spec(at("example1_warped.spec"));
  const auto chart = sf.metric_field().chart();
  const auto parsed = parse_forms(at("psi3.forms"), chart);
  const auto fam = example1::forms(chart, {"0", "0", "1", "0"});
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(parsed.Psi[i].str(), fam.Psi[i].str());
    EXPECT_TRUE(symexpr::canonicalize(parsed.Theta[i] - fam.Theta[i]).is_zero_constant()) << i;
  }
}

TEST(Cli, ExampleSuitePasses) {
  const Outcome r = invoke({"example1"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("result: OK"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL "), std::string::npos) << r.out;
}

TEST(Cli, ExampleSuiteReportsTheBaseRicciEntries) {
  const Outcome r = invoke({"example1", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  std::vector<std::string> tensors;
  for (const auto& d : j["paper_discrepancies"]) tensors.push_back(d.value("tensor", d.value("condition", "")));
  EXPECT_NE(std::find(tensors.begin(), tensors.end(), "Sbar_11"), tensors.end());
  EXPECT_NE(std::find(tensors.begin(), tensors.end(), "Sbar_22"), tensors.end());
  EXPECT_NE(std::find(tensors.begin(), tensors.end(), "C2.i"), tensors.end());
}

TEST(Cli, FlatClassificationIsVacuousAndExitsZero) {
  const Outcome r = invoke({"classify", at("flat3.spec")});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("VacuouslyExcluded"), std::string::npos);
}

TEST(Cli, TheoremOnExampleExitsZero) {
  const Outcome r = invoke({"theorem41", at("example1_warped.spec"), "--forms", at("psi3.forms")});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  for (const char* c : {"C1.i", "C1.ii", "C2.i", "C2.ii", "C3.i", "C3.ii", "C4.i", "C4.ii"})
    EXPECT_NE(r.out.find(c), std::string::npos) << c;
}

TEST(Cli, FailingVerdictExitsOne) {
  const Outcome r = invoke({"theorem41", at("example1_warped.spec"), "--forms", at("psi3.forms"), "--variant", "K"});
  EXPECT_EQ(r.code, kExitFails) << r.out << r.err;
}

TEST(Cli, UsageAndInputErrorsExitTwo) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"classify"}).code, kExitUsage);
  EXPECT_EQ(invoke({"classify", at("flat3.spec"), "--format", "xml"}).code, kExitUsage);
  const Outcome r = invoke({"classify", at("missing.spec")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("missing.spec"), std::string::npos);
  EXPECT_EQ(invoke({"warped-check", at("flat3.spec")}).code, kExitUsage);
}

TEST(Cli, JsonIsDeterministicAndCarriesTheSchema) {
  const std::vector<std::string> args = {"classify", at("example1_base.spec"), "--format", "json", "--samples", "4"};
  const Outcome a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["seed"], 20240611u);
  for (const char* k : {"tolerances", "verdicts", "residuals", "recovered_forms", "flags", "paper_discrepancies"})
    EXPECT_TRUE(j.contains(k)) << k;
}

TEST(Cli, SeedChangesThePoints) {
  const Outcome a = invoke({"classify", at("example1_base.spec"), "--format", "json", "--samples", "2", "--structures", "k"});
  const Outcome b = invoke({"classify", at("example1_base.spec"), "--format", "json", "--samples", "2", "--structures", "k",
                     "--seed", "7"});
  EXPECT_NE(nlohmann::json::parse(a.out)["recovered_forms"], nlohmann::json::parse(b.out)["recovered_forms"]);
}

TEST(Cli, CurvatureReportsIdentities) {
  const Outcome r = invoke({"curvature", at("hyperbolic3.spec")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("second Bianchi"), std::string::npos);
  EXPECT_NE(r.out.find("S_11 = 2"), std::string::npos);
}

TEST(Cli, WarpedCheckAgreesOnRandomInstance) {
  const Outcome r = invoke({"warped-check", at("random_warped.spec")});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(r.out.find("NonZero"), std::string::npos);
}

TEST(Cli, RoterOnBase) {
  const Outcome r = invoke({"roter", at("example1_base.spec")});
  EXPECT_EQ(r.code, kExitOk) << r.out;
}

TEST(Cli, SharedFlagsBeforeOrAfterTheSubcommand) {
  const Outcome a = invoke({"--format", "json", "--samples", "3", "classify", at("flat3.spec")});
  const Outcome b = invoke({"classify", at("flat3.spec"), "--format", "json", "--samples", "3"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["tolerances"]["samples"], 3);
}

TEST(Cli, ConsequencesListFiberFormCandidates) {
  const Outcome r = invoke({"theorem41", at("example1_warped.spec"), "--forms", at("psi3.forms"), "--consequences",
                            "--samples", "4"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  for (const char* k : {"fiber-sgk", "corrected formula", "printed-general formula", "printed-weak formula"})
    EXPECT_NE(r.out.find(k), std::string::npos) << k;
}
