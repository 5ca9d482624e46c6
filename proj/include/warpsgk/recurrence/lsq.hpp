#pragma once

#include "warpsgk/symexpr/real.hpp"

#include <vector>

namespace warpsgk::recurrence {

struct LsqOptions {
  /// Singular values below rank_tol * σ_max count as zero.
  double rank_tol = 1e-30;
  /// Floor for the denominator of the relative residual.
  double rel_floor = 1e-40;
};

struct LsqSolution {
  std::vector<std::vector<Real>> coefficients;  // one vector per right-hand side
  std::vector<Real> residual_abs;
  std::vector<Real> residual_rel;
  std::size_t rank = 0;
  std::vector<Real> singular_values;          // descending
  std::vector<std::vector<Real>> nullspace;   // orthonormal, in coefficient space
};

/// Minimum-norm least squares for A x = b_r, one solve per right-hand side,
/// where A has the given columns (all of equal length). An empty column list
/// yields rank 0 and a residual equal to the target.
LsqSolution least_squares(const std::vector<std::vector<Real>>& columns, const std::vector<std::vector<Real>>& rhs,
                          const LsqOptions& opts = {});

}  // namespace warpsgk::recurrence
