#pragma once

#include "warpsgk/symexpr/expr.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace warpsgk::symexpr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : std::runtime_error(what + " at column " + std::to_string(column)), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' ['+'|'-'] integer)?
//   base   := number | ident | '(' expr ')' | ('exp'|'sinh'|'cosh') '(' expr ')'
// Numbers are integers or decimals and are read exactly. sinh and cosh are
// rewritten into exponentials. Identifiers must name a chart coordinate.
//
// The result is canonical. Throws ParseError on syntax errors,
// UnknownSymbol on identifiers outside the chart and std::domain_error on
// expressions outside the supported language (e.g. exp(x1*x2)).
Expr parse_expr(std::string_view text, const Chart& chart);

}  // namespace warpsgk::symexpr
