#pragma once

// The 4-dimensional worked example: e^{x2}(dx1)² + e^{x1}(dx2)² + (dx3)²
// warped over a line x4 with f = e^{x3}, its published component values and
// its one-parameter family of associated forms.

#include "warpsgk/theorems/theorems.hpp"

#include <array>
#include <string>
#include <vector>

namespace warpsgk::cli::example1 {

warped::WarpedSpec spec();
/// Same base warped over a flat plane (y1, y2); SGK with df ≠ 0.
warped::WarpedSpec plane_spec();

/// Associated forms for a constant Ψ given as four expression strings.
theorems::FormSet forms(const geometry::Chart& chart, const std::array<std::string, 4>& psi);

/// Π̄ of the base recurrence, in the published closed form.
std::vector<geometry::Expr> base_pi(const geometry::Chart& base_chart);

struct Golden {
  std::string name;
  geometry::Expr computed;
  geometry::Expr expected;
};

/// Published components set against the pipeline.
std::vector<Golden> golden_values();

/// Published base Ricci entries that the pipeline does not reproduce,
/// with the computed values.
struct PrintedEntry {
  std::string name, printed, computed;
  bool matches = false;
};
std::vector<PrintedEntry> printed_base_ricci();

}  // namespace warpsgk::cli::example1
