#pragma once

#include "warpsgk/geometry/curvature.hpp"

#include <string>
#include <vector>

namespace warpsgk::warped {

using geometry::Chart;
using geometry::Curvature;
using geometry::Expr;
using geometry::MetricField;
using geometry::OneFormField;
using geometry::Point;
using geometry::TensorField;

/// M = base ×_f fiber with g = ḡ ⊕ f g̃ (f unsquared).
struct WarpedSpec {
  MetricField base;
  MetricField fiber;
  Expr f;
};

/// Checks disjoint coordinates, f over base coordinates only, f not the zero
/// function and f > 0 at `samples` seeded points of the base.
/// Throws std::invalid_argument / std::domain_error.
void validate(const WarpedSpec& spec, std::size_t samples = 16, std::uint64_t seed = 20240611);

/// The product chart (base coordinates first).
Chart product_chart(const WarpedSpec& spec);

/// Block metric ḡ on the base block, f·g̃ on the fiber block, zero elsewhere.
MetricField build_warped(const WarpedSpec& spec);

/// Quantities on the base. T uses the base Levi-Civita connection.
struct WarpedAux {
  TensorField T;        // T_ab = -1/(2f) (∇_b f_a - f_a f_b / (2f))
  Expr P;               // 1/(4f²) ḡ^ab f_a f_b
  Expr Q;               // f((n-p-1)P - tr T)
  Expr trT;             // ḡ^ab T_ab
  OneFormField df;      // f_a
  OneFormField df_up;   // f^a = ḡ^ab f_b
  OneFormField dP;      // P_a
  TensorField nabla_T;  // T_ab,c (base connection)
};

WarpedAux warped_auxiliaries(const WarpedSpec& spec);

/// Which signs and factors the block formulas use. AsPrinted reproduces the
/// formulas exactly as typeset, including the sign and factor slips, so the
/// crosscheck can show which printed version the direct computation supports.
enum class FormulaVariant { Corrected, AsPrinted };
std::string to_string(FormulaVariant v);

struct WarpedPrediction {
  TensorField R, S, nabla_R, gg, gS, SS;
  Expr kappa;
};

/// Assembles every tensor block by block from base and fiber quantities.
WarpedPrediction predict_components(const WarpedSpec& spec, FormulaVariant variant = FormulaVariant::Corrected);

/// Block pattern of an index tuple: one letter per index, B (base) or F
/// (fiber), derivative index after a comma, e.g. "BFBF,B".
std::string block_label(const WarpedSpec& spec, const std::vector<std::size_t>& index);

struct CrosscheckEntry {
  std::string tensor;
  symexpr::ZeroVerdict verdict = symexpr::ZeroVerdict::ProvedZero;
  std::size_t nonzero_count = 0;
  std::vector<std::size_t> first_index;  // empty when zero
  std::string block;                     // block of first_index
  Real max_abs = 0;
};

struct CrosscheckReport {
  FormulaVariant variant = FormulaVariant::Corrected;
  std::vector<CrosscheckEntry> entries;  // R, S, kappa, nabla_R, gg, gS, SS
  bool all_zero = true;                  // no entry is NonZero
};

/// Difference between the block formulas and the direct pipeline on the
/// assembled metric, tensor by tensor.
CrosscheckReport crosscheck(const WarpedSpec& spec, FormulaVariant variant = FormulaVariant::Corrected,
                            const symexpr::SamplingOptions& opts = {});

/// One printed formula that disagrees with the direct computation, with the
/// first offending block and index.
struct PrintedDiscrepancy {
  std::string tensor;
  std::string block;
  std::vector<std::size_t> index;
  std::string printed;    // the formula as typeset
  std::string corrected;  // the reading the direct computation supports
};

/// Runs the AsPrinted crosscheck and describes each mismatching tensor.
std::vector<PrintedDiscrepancy> printed_discrepancies(const WarpedSpec& spec, const symexpr::SamplingOptions& opts = {});

}  // namespace warpsgk::warped
