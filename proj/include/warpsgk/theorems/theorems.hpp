#pragma once

#include "warpsgk/recurrence/recurrence.hpp"
#include "warpsgk/warped/warped.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace warpsgk::theorems {

using geometry::Array;
using geometry::Expr;
using geometry::NumericTensor;
using geometry::OneFormField;
using geometry::Point;
using geometry::TensorField;
using recurrence::Tolerances;
using recurrence::Verdict;
using warped::FormulaVariant;
using warped::WarpedSpec;

/// The four associated 1-forms on the product chart.
struct FormSet {
  OneFormField Pi, Phi, Psi, Theta;
};

/// Zero forms on the product chart of `spec`.
FormSet zero_forms(const WarpedSpec& spec);

/// Condition groups: C1 base curvature, C2 fiber curvature, C3 mixed
/// base-fiber block, C4 the first-order constraints on f. Within a group (i)
/// differentiates along the base and (ii) along the fiber, except in C4
/// where (i) is the base relation f^d R̄_abcd = -(f_a T_bc - f_b T_ac) and
/// (ii) is df⊗R̃ = f² dP⊗G̃.
inline constexpr std::array<const char*, 8> kConditionNames = {"C1.i", "C1.ii", "C2.i", "C2.ii",
                                                               "C3.i", "C3.ii", "C4.i", "C4.ii"};

/// Which signs and factors the condition tensors use. The corrected reading
/// makes every condition equal to a block of
/// E = ∇R - Π⊗R - Φ⊗S∧S - Ψ⊗g∧S - Θ⊗g∧g (C4 up to a nonzero factor).
struct Reading {
  int c2i_p_pi = 1;      // sign of ½f²PΠ̄ in C2.i
  int c2i_dp = -1;       // sign of ½f²dP in C2.i
  int c2ii_q_phi = 2;    // factor of QΦ̃ in front of g̃∧S̃ in C2.ii
  int c2ii_p_pi = 1;     // sign of ½f²PΠ̃ in C2.ii
  bool c3ii_fiber_ricci = false;  // S̃ in place of S̄ inside the g̃ bracket of C3.ii
  bool c4ii_theta_p = false;      // PΘ̄ in place of dP in C4.ii

  static Reading corrected() { return {}; }
  /// The theorem exactly as typeset.
  static Reading printed_theorem() { return {-1, -1, 1, -1, false, true}; }
};

struct ConditionResult {
  std::string name;
  std::string statement;
  Verdict verdict = Verdict::Holds;
  symexpr::ZeroVerdict zero = symexpr::ZeroVerdict::ProvedZero;
  Real max_residual = 0;  // max Frobenius norm over the sample points
  std::vector<std::size_t> first_nonzero;
  std::vector<Point> points;
};

struct ConditionReport {
  std::string title;
  std::vector<ConditionResult> conditions;
  Verdict overall = Verdict::Holds;
  std::string reading;  // "corrected" or "as-printed"
  std::vector<std::string> notes;
  const ConditionResult* find(const std::string& name) const;
};

struct CheckOptions {
  std::size_t samples = 16;
  std::uint64_t seed = 20240611;
  Tolerances tol;
};

/// Evaluates the eight conditions for the given forms. Throws
/// std::invalid_argument when a form is not on the product chart.
ConditionReport check_theorem41(const WarpedSpec& spec, const FormSet& forms, const CheckOptions& opts = {},
                                FormulaVariant variant = FormulaVariant::Corrected);
ConditionReport check_theorem41(const WarpedSpec& spec, const FormSet& forms, const Reading& reading,
                                const CheckOptions& opts = {});

/// Condition tensors at a single point (numeric), index layout as in the
/// symbolic report: every tensor lives on the product chart, rank 5 except
/// C4.i (rank 3), nonzero only on its block.
std::array<NumericTensor, 8> condition_residuals_at(const WarpedSpec& spec, const FormSet& forms, const Point& p,
                                                    const Reading& reading = Reading::corrected());

/// Per condition, the largest relative residual over the sample points when
/// the conditions are evaluated at the forms recovered by the direct SGK
/// solve, under the corrected and the typeset reading.
struct ReadingRow {
  std::string name;
  Real corrected = 0;
  Real printed = 0;
};

struct ReadingComparison {
  std::vector<ReadingRow> rows;
  std::size_t points = 0;     // points where the direct SGK solve succeeded
  bool distinguishable = false;
  std::string preferred;      // "corrected", "as-printed", "neither" or "undetermined"
  const ReadingRow& row(const std::string& name) const;
};

ReadingComparison compare_readings(const WarpedSpec& spec, const CheckOptions& opts = {});

struct EquivalencePoint {
  Point point;
  Real sgk_residual = 0;        // direct SGK solve on the assembled metric
  Real condition_residual = 0;  // least-squares solve of the conditions for the forms
  Real supplied_residual = 0;   // conditions at the supplied forms, relative
  bool sgk_holds = false;
  bool conditions_hold = false;
  bool supplied_hold = false;
  bool agree = false;
  std::vector<std::vector<Real>> recovered;  // Π, Φ, Ψ, Θ from the conditions
};

struct EquivalenceReport {
  std::vector<EquivalencePoint> points;
  bool agree = true;  // both directions at every point, and supplied ⇒ SGK
  std::size_t sgk_hold_count = 0;
  std::size_t condition_hold_count = 0;
  std::string summary;
};

/// Runs the direct SGK solve on the assembled metric and an independent
/// least-squares solve of the eight conditions at the same points.
EquivalenceReport check_equivalence(const WarpedSpec& spec, const FormSet& forms, const CheckOptions& opts = {});

enum class CorollaryVariant { K, HGK, WGK, ProductSGK, ProductK, ProductHGK, ProductWGK };
std::string to_string(CorollaryVariant v);
std::optional<CorollaryVariant> parse_corollary_variant(std::string_view s);
bool is_product(CorollaryVariant v);

struct CorollaryReport {
  CorollaryVariant variant = CorollaryVariant::K;
  ConditionReport conditions;   // the variant's own list
  ConditionReport specialized;  // the full theorem with the absent forms zeroed
  bool coherent = true;         // identical overall verdicts
};

/// Evaluates the variant's condition list. Forms not carried by the variant
/// are zeroed first. Product variants require f ≡ 1 (std::invalid_argument).
/// With `as_printed` the typeset signs and factors are used.
CorollaryReport check_corollary_variant(const WarpedSpec& spec, CorollaryVariant variant, const FormSet& forms,
                                        const CheckOptions& opts = {}, bool as_printed = false);

struct Consequence {
  std::string name;
  std::string region;
  Verdict verdict = Verdict::VacuouslyExcluded;
  Real max_residual = 0;
  std::size_t region_points = 0;
  std::string detail;
};

struct ConsequenceReport {
  std::vector<Consequence> items;
  /// Fiber forms recovered by a least-squares solve at the first region
  /// point, and which candidate formula reproduces the fiber equation.
  std::vector<std::vector<Real>> fiber_forms;
  std::vector<std::pair<std::string, Real>> fiber_form_candidates;  // name, residual
  const Consequence* find(const std::string& name) const;
};

/// Region-restricted consequences: fiber Roter type, Einstein, constant
/// curvature, conformal flatness, fiber SGK forms, T recurrence and the
/// vanishing of R̄, T, P where Π̃ ≠ 0.
ConsequenceReport corollary_consequence_report(const WarpedSpec& spec, const FormSet& forms,
                                               const CheckOptions& opts = {});

/// C = R - 1/(n-2) g∧S + κ/(2(n-1)(n-2)) g∧g; zero for n < 4 by convention.
TensorField weyl(const geometry::Curvature& c);

}  // namespace warpsgk::theorems
