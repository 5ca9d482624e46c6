#pragma once

#include "warpsgk/theorems/theorems.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace warpsgk::cli {

using geometry::Chart;
using geometry::MetricField;
using geometry::OneFormField;

/// Parse failure with 1-based line and column (column 0 when the whole line
/// or file is at fault).
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& path, std::size_t line, std::size_t column, const std::string& msg);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

// File format: sections introduced by [name] lines; '#' starts a comment.
//
//   [chart]    coordinate names separated by blanks or commas
//   [metric]   g<i><j> = expr, g_<i>_<j> = expr or g_<name>_<name> = expr
//              (indices 1-based; unassigned components are 0; the symmetric
//              partner is filled in; conflicting partners are an error)
//   [warped]   base = <file>, fiber = <file>, f = expr over base coordinates,
//              optional convention = unsquared (g = ḡ ⊕ f g̃; squared is refused)
//   [forms]    Pi_<i>, Phi_<i>, Psi_<i>, Theta_<i> = expr
//   [eta]      eta_<i> = expr
//
// A file has either [chart] + [metric] or [warped]. Relative paths in
// [warped] are resolved against the directory of the file.
struct SpecFile {
  std::string path;
  std::optional<MetricField> metric;  // assembled from [warped] when present
  std::optional<warped::WarpedSpec> warped;
  std::optional<theorems::FormSet> forms;
  std::optional<OneFormField> eta;
  const MetricField& metric_field() const;
};

SpecFile parse_spec(const std::string& path);
SpecFile parse_spec_text(std::string_view text, const std::string& path, const std::string& directory = ".");

/// A file holding only [forms] (and optionally [eta]) over a given chart.
theorems::FormSet parse_forms(const std::string& path, const Chart& chart);
OneFormField parse_eta(const std::string& path, const Chart& chart);

}  // namespace warpsgk::cli
