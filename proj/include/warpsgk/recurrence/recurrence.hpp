#pragma once

#include "warpsgk/geometry/curvature.hpp"
#include "warpsgk/recurrence/lsq.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace warpsgk::recurrence {

using geometry::Curvature;
using geometry::MetricField;
using geometry::NumericTensor;
using geometry::OneFormField;
using geometry::Point;
using geometry::TensorField;

enum class Structure { K, ConcircularRecurrent, GK, QGK, HGK, WGK, SGK, Roter, GeneralizedRoter };

std::string to_string(Structure s);
/// Accepts the short CLI names (k, ck, gk, qgk, hgk, wgk, sgk, rt, grt) and
/// the long names, case-insensitively.
std::optional<Structure> parse_structure(std::string_view name);
/// Labels of the unknown coefficients, in basis order.
std::vector<std::string> coefficient_names(Structure s);
/// True for the structures whose defining set excludes recurrent points.
bool is_generalized(Structure s);

enum class Verdict { Holds, HoldsDegenerately, Fails, VacuouslyExcluded };
std::string to_string(Verdict v);

struct Tolerances {
  double tau_rel = 1e-9;
  double tau_abs = 1e-12;
  double rank_tol = 1e-30;
};

/// Numeric values of everything a basis can be built from, at one point.
struct PointTensors {
  Point point;
  NumericTensor g, g_inv, R, S, nabla_R;
  Real kappa = 0;
  std::vector<Real> dkappa;        // filled only when requested
  std::vector<Real> eta;           // empty unless supplied
};

/// Evaluates c at p. dkappa, when given, is the list of ∂_m κ.
/// Throws symexpr::SingularPoint where any component is singular.
PointTensors evaluate_point(const Curvature& c, const Point& p, const std::vector<geometry::Expr>* dkappa = nullptr,
                            const OneFormField* eta = nullptr);

/// Right-hand side tensors of the defining equation, in coefficient order.
/// For the Roter types the signs are folded in, so the recovered values are
/// N_i (resp. L_j) directly. Generalized Roter uses F = S², S²_ij = S_ik g^kl S_lj.
std::vector<NumericTensor> basis_at(Structure s, const PointTensors& t);
/// ∇R, ∇W for the concircular structure, R for the Roter types (rank 4).
NumericTensor target_at(Structure s, const PointTensors& t);

struct PointwiseSolution {
  std::vector<std::vector<Real>> coefficients;  // [m][basis]
  std::vector<Real> residuals;                  // relative, per m
  Real max_residual = 0;
  std::size_t rank = 0;
  std::vector<std::vector<Real>> nullspace;
  /// A basis tensor vanishes or two of them are collinear.
  bool degenerate = false;
};

/// For each m, the minimum-norm least-squares fit of target(...,m) by the
/// basis over all n^4 components. A rank-4 target is one right-hand side.
/// fixed[b], when present, pins coefficient b to the given per-m values and
/// removes it from the unknowns.
PointwiseSolution solve_pointwise_coefficients(const NumericTensor& target, const std::vector<NumericTensor>& basis,
                                               const std::vector<std::optional<std::vector<Real>>>& fixed = {},
                                               const Tolerances& tol = {});

struct ClassifyOptions {
  std::size_t samples = 16;
  std::uint64_t seed = 20240611;
  std::size_t max_attempts = 2000;
  Tolerances tol;
  std::optional<OneFormField> eta;
};

struct PointRecord {
  std::size_t index = 0;
  Point point;
  bool excluded = false;
  std::string exclusion;  // reason when excluded
  PointwiseSolution solution;
};

struct StructureResult {
  Structure structure = Structure::K;
  Verdict verdict = Verdict::Fails;
  std::vector<std::string> coefficient_names;
  std::vector<PointRecord> points;
  Real max_residual = 0;  // over non-excluded points
  std::size_t min_rank = 0, max_rank = 0;
  std::string explanation;
};

struct ClassificationReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  Tolerances tol;
  std::vector<Point> points;
  std::vector<StructureResult> results;  // hierarchy order
  bool flat = false;

  const StructureResult* find(Structure s) const;
};

/// Classifies g against the requested structures at seeded sample points.
/// Requires n >= 3 (std::invalid_argument) and η for QGK (std::invalid_argument).
ClassificationReport classify(const Curvature& c, std::vector<Structure> structures, const ClassifyOptions& opts = {});
ClassificationReport classify(const MetricField& g, std::vector<Structure> structures,
                              const ClassifyOptions& opts = {});

/// Draws `samples` non-singular points for c, deterministically from the seed.
std::vector<Point> sample_points(const Curvature& c, const ClassifyOptions& opts);

struct OlszakPoint {
  Point point;
  Real gk_residual = 0;
  bool gk_solved = false;
  std::vector<Real> theta;
  bool theta_vanishes = false;
};

struct OlszakReport {
  bool vacuous = false;
  bool consistent = true;  // |Θ| < τ_abs wherever the GK solve succeeded
  std::vector<OlszakPoint> points;
  std::string summary;
};

/// Solves ∇R = Π⊗R + Θ⊗g∧g at every sample point; where the fit is exact the
/// recovered Θ must vanish.
OlszakReport olszak_degeneracy_check(const Curvature& c, const ClassifyOptions& opts = {});

struct RoterDecomposition {
  std::vector<Real> coefficients;  // N1..N3 or L1..L6
  Real residual = 0;
  std::size_t rank = 0;
  bool generalized = false;
};

/// D = N1 A∧A - N2 A∧E - N3 E∧E (and the F terms when F is given).
RoterDecomposition roter_decompose(const NumericTensor& D, const NumericTensor& A, const NumericTensor& E,
                                   const NumericTensor* F = nullptr, const Tolerances& tol = {});
RoterDecomposition roter_decompose(const TensorField& D, const TensorField& A, const TensorField& E,
                                   const TensorField* F, const Point& p, const Tolerances& tol = {});

}  // namespace warpsgk::recurrence
