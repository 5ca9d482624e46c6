#pragma once

#include "warpsgk/geometry/curvature.hpp"
#include "warpsgk/symexpr/parse.hpp"

#include <string>
#include <vector>

namespace fixtures {

using warpsgk::geometry::Array;
using warpsgk::geometry::MetricField;
using warpsgk::symexpr::Chart;
using warpsgk::symexpr::Expr;

// rows of strings; upper triangle is mirrored from the lower one when blank
inline MetricField metric(const std::vector<std::string>& names, const std::vector<std::vector<std::string>>& rows) {
  Chart ch(names);
  const std::size_t n = names.size();
  Array<Expr> g(n, 2, Expr(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      g(i, j) = warpsgk::symexpr::parse_expr(rows[i][j], ch);
      g(j, i) = g(i, j);
    }
  return MetricField(ch, g);
}

inline MetricField diag(const std::vector<std::string>& names, const std::vector<std::string>& entries) {
  Chart ch(names);
  std::vector<Expr> d;
  for (const auto& e : entries) d.push_back(warpsgk::symexpr::parse_expr(e, ch));
  return MetricField::diagonal(ch, d);
}

inline MetricField example1_base() { return diag({"x1", "x2", "x3"}, {"exp(x2)", "exp(x1)", "1"}); }
inline MetricField example1_full() {
  return diag({"x1", "x2", "x3", "x4"}, {"exp(x2)", "exp(x1)", "1", "exp(x3)"});
}

inline Expr P(const MetricField& g, const std::string& s) { return warpsgk::symexpr::parse_expr(s, g.chart()); }

inline bool same(const Expr& a, const Expr& b) { return warpsgk::symexpr::canonicalize(a - b).is_zero_constant(); }

}  // namespace fixtures
