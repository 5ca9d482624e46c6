#pragma once

#include "warpsgk/symexpr/ratfun.hpp"
#include "warpsgk/symexpr/real.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace warpsgk::symexpr {

/// Ordered, duplicate-free list of coordinate names.
class Chart {
 public:
  Chart() = default;
  explicit Chart(std::vector<std::string> names);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int symbol(std::size_t i) const { return symbols_.at(i); }
  const std::vector<int>& symbols() const { return symbols_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::optional<std::size_t> index_of_symbol(int sym) const;

  /// Coordinates of a followed by coordinates of b; names must be disjoint.
  static Chart product(const Chart& a, const Chart& b);

  friend bool operator==(const Chart& a, const Chart& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::vector<int> symbols_;
};

/// Immutable symbolic scalar. Either a canonical leaf (a reduced rational
/// function over coordinates and exponentials of coordinates) or a
/// structural node kept as written until canonicalize() folds it.
/// Arithmetic between two canonical values stays canonical.
class Expr {
 public:
  enum class Kind { Canonical, Sum, Product, Power, Quotient, Exp };

  Expr();
  Expr(int value);             // NOLINT(google-explicit-constructor)
  Expr(const Rational& value); // NOLINT(google-explicit-constructor)
  explicit Expr(RationalFunction f);

  static Expr symbol(std::string_view name);
  static Expr exp_of(const Expr& arg);

  // Structural constructors: no folding.
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(const Expr& base, int exponent);
  static Expr quotient(const Expr& num, const Expr& den);
  static Expr exp(const Expr& arg);

  Kind kind() const;
  bool is_canonical() const { return kind() == Kind::Canonical; }
  /// Canonical payload; throws if the expression is structural.
  const RationalFunction& normal() const;
  const std::vector<Expr>& operands() const;
  int exponent() const;

  /// True for the canonical zero only (no evaluation).
  bool is_zero_constant() const;
  std::optional<Rational> constant_value() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr pow(int e) const;

  std::string str() const;

  /// Structural identity (canonical payloads compared by normal form).
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Fold an expression into its canonical form. Idempotent. Throws
/// std::domain_error on division by the zero function and on exponentials
/// whose argument is not an integer combination of coordinates.
Expr canonicalize(const Expr& e);

/// ∂e/∂coord, canonical. Throws UnknownSymbol if coord is not in the chart.
Expr differentiate(const Expr& e, const Chart& chart, std::string_view coord);
Expr differentiate(const Expr& e, int symbol);

/// Interned ids of the coordinates that occur in e.
std::vector<int> free_symbols(const Expr& e);

class UnknownSymbol : public std::invalid_argument {
 public:
  explicit UnknownSymbol(const std::string& name)
      : std::invalid_argument("unknown symbol '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnboundSymbol : public std::invalid_argument {
 public:
  explicit UnboundSymbol(const std::string& name)
      : std::invalid_argument("symbol '" + name + "' is not bound at the evaluation point") {}
};

/// Raised when a denominator is (numerically) zero at the requested point.
/// Not a fault: callers resample.
class SingularPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coordinate values (exact rationals) with cached high-precision values and
/// exponentials.
class Point {
 public:
  Point() = default;
  void set(std::string_view name, const Rational& value);
  void set_symbol(int sym, const Rational& value);
  bool has(int sym) const { return values_.count(sym) != 0; }
  const Rational& rational(int sym) const;
  const Real& real(int sym) const;
  const Real& exp(int sym) const;
  const std::map<int, Rational>& rationals() const { return exact_; }
  std::string str() const;

 private:
  struct Cached {
    Real value;
    Real exponential;
  };
  std::map<int, Rational> exact_;
  std::map<int, Cached> values_;
};

/// Denominators smaller than this in magnitude are treated as singular.
inline constexpr double kSingularThreshold = 1e-12;

Real evaluate(const Expr& e, const Point& p);
Real evaluate(const RationalFunction& f, const Point& p);
Real evaluate(const Poly& f, const Point& p);

enum class ZeroVerdict { ProvedZero, NumericallyZero, NonZero };
std::string to_string(ZeroVerdict v);

struct SamplingOptions {
  std::size_t samples = 16;
  double tau_abs = 1e-30;
  std::uint64_t seed = 20240611;
  std::size_t max_attempts = 2000;
};

struct ZeroTest {
  ZeroVerdict verdict = ZeroVerdict::ProvedZero;
  std::optional<Point> witness;
  Real max_abs;
  std::size_t points_used = 0;
};

/// Two-tier zero test: canonical proof, else high-precision sampling.
ZeroTest is_zero(const Expr& e, const SamplingOptions& opts = {});

}  // namespace warpsgk::symexpr
