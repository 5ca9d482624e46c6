#include "warpsgk/symexpr/expr.hpp"

#include "warpsgk/symexpr/sampling.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace warpsgk::symexpr {

// ---------------------------------------------------------------------------
// Chart

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("chart must have at least one coordinate");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("empty coordinate name");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate coordinate name '" + n + "'");
    symbols_.push_back(intern_symbol(n));
  }
}

std::optional<std::size_t> Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Chart::index_of_symbol(int sym) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == sym) return i;
  return std::nullopt;
}

Chart Chart::product(const Chart& a, const Chart& b) {
  std::vector<std::string> names = a.names_;
  names.insert(names.end(), b.names_.begin(), b.names_.end());
  return Chart(std::move(names));
}

// ---------------------------------------------------------------------------
// Expr

struct Expr::Node {
  Kind kind = Kind::Canonical;
  RationalFunction normal;
  std::vector<Expr> ops;
  int exponent = 0;
};

Expr::Expr() : Expr(RationalFunction()) {}

Expr::Expr(int value) : Expr(RationalFunction(Rational(value))) {}

Expr::Expr(const Rational& value) : Expr(RationalFunction(value)) {}

Expr::Expr(RationalFunction f) {
  auto n = std::make_shared<Node>();
  n->normal = std::move(f);
  node_ = std::move(n);
}

Expr Expr::symbol(std::string_view name) {
  return Expr(RationalFunction(Poly::coordinate(intern_symbol(name))));
}

Expr Expr::sum(std::vector<Expr> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->ops = std::move(terms);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->ops = std::move(factors);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::power(const Expr& base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->ops = {base};
  n->exponent = exponent;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::quotient(const Expr& num, const Expr& den) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Quotient;
  n->ops = {num, den};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::exp(const Expr& arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exp;
  n->ops = {arg};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::exp_of(const Expr& arg) { return canonicalize(exp(arg)); }

Expr::Kind Expr::kind() const { return node_->kind; }

const RationalFunction& Expr::normal() const {
  if (node_->kind != Kind::Canonical) throw std::logic_error("expression is not canonical");
  return node_->normal;
}

const std::vector<Expr>& Expr::operands() const { return node_->ops; }

int Expr::exponent() const { return node_->exponent; }

bool Expr::is_zero_constant() const { return is_canonical() && node_->normal.is_zero(); }

std::optional<Rational> Expr::constant_value() const {
  if (!is_canonical() || !node_->normal.is_constant()) return std::nullopt;
  return node_->normal.numerator().constant_value();
}

Expr Expr::operator-() const {
  if (is_canonical()) return Expr(-normal());
  return product({Expr(-1), *this});
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_canonical() && b.is_canonical()) return Expr(a.normal() + b.normal());
  return Expr::sum({a, b});
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_canonical() && b.is_canonical()) return Expr(a.normal() - b.normal());
  return Expr::sum({a, -b});
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_canonical() && b.is_canonical()) return Expr(a.normal() * b.normal());
  return Expr::product({a, b});
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_canonical() && b.is_canonical() && !b.normal().is_zero()) return Expr(a.normal() / b.normal());
  return Expr::quotient(a, b);
}

Expr Expr::pow(int e) const {
  if (is_canonical() && !(e < 0 && normal().is_zero())) return Expr(normal().pow(e));
  return power(*this, e);
}

std::string Expr::str() const {
  switch (kind()) {
    case Kind::Canonical:
      return to_string(node_->normal);
    case Kind::Sum: {
      std::string s = "(";
      for (std::size_t i = 0; i < node_->ops.size(); ++i) s += (i ? " + " : "") + node_->ops[i].str();
      return s + ")";
    }
    case Kind::Product: {
      std::string s = "(";
      for (std::size_t i = 0; i < node_->ops.size(); ++i) s += (i ? "*" : "") + node_->ops[i].str();
      return s + ")";
    }
    case Kind::Power:
      return "(" + node_->ops[0].str() + ")^" + std::to_string(node_->exponent);
    case Kind::Quotient:
      return "(" + node_->ops[0].str() + ")/(" + node_->ops[1].str() + ")";
    case Kind::Exp:
      return "exp(" + node_->ops[0].str() + ")";
  }
  return {};
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_canonical()) return a.node_->normal == b.node_->normal;
  return a.node_->exponent == b.node_->exponent && a.node_->ops == b.node_->ops;
}

// ---------------------------------------------------------------------------
// canonicalize / differentiate

namespace {

RationalFunction exp_normal(const RationalFunction& arg) {
  if (!arg.is_polynomial())
    throw std::domain_error("exp argument must be a linear combination of coordinates: " + to_string(arg));
  std::vector<Monomial::Factor> factors;
  for (const auto& [m, c] : arg.numerator().terms()) {
    if (m.is_one())
      throw std::domain_error("exp argument must not contain a constant term: " + to_string(arg));
    if (m.factors().size() != 1 || is_exp_generator(m.factors()[0].first) || m.factors()[0].second != 1)
      throw std::domain_error("exp argument must be linear in the coordinates: " + to_string(arg));
    if (c.get_den() != 1 || !c.get_num().fits_sint_p())
      throw std::domain_error("exp argument needs integer coefficients: " + to_string(arg));
    const int sym = generator_symbol(m.factors()[0].first);
    factors.emplace_back(exp_generator(sym), static_cast<int>(c.get_num().get_si()));
  }
  return RationalFunction(Poly(Monomial(std::move(factors)), Rational(1)));
}

RationalFunction fold(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Canonical:
      return e.normal();
    case Expr::Kind::Sum: {
      RationalFunction acc;
      for (const auto& t : e.operands()) acc = acc + fold(t);
      return acc;
    }
    case Expr::Kind::Product: {
      RationalFunction acc(Rational(1));
      for (const auto& t : e.operands()) {
        acc = acc * fold(t);
      }
      return acc;
    }
    case Expr::Kind::Power:
      return fold(e.operands()[0]).pow(e.exponent());
    case Expr::Kind::Quotient: {
      RationalFunction d = fold(e.operands()[1]);
      if (d.is_zero()) throw std::domain_error("division by zero in " + e.str());
      return fold(e.operands()[0]) / d;
    }
    case Expr::Kind::Exp:
      return exp_normal(fold(e.operands()[0]));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Expr canonicalize(const Expr& e) {
  if (e.is_canonical()) return e;
  return Expr(fold(e));
}

Expr differentiate(const Expr& e, int symbol) {
  return Expr(canonicalize(e).normal().derivative(symbol));
}

Expr differentiate(const Expr& e, const Chart& chart, std::string_view coord) {
  auto idx = chart.index_of(coord);
  if (!idx) throw UnknownSymbol(std::string(coord));
  return differentiate(e, chart.symbol(*idx));
}

std::vector<int> free_symbols(const Expr& e) {
  std::set<int> syms;
  auto visit = [&](auto&& self, const Expr& x) -> void {
    if (x.is_canonical()) {
      for (int s : x.normal().numerator().symbols()) syms.insert(s);
      for (int s : x.normal().denominator().symbols()) syms.insert(s);
      return;
    }
    for (const auto& o : x.operands()) self(self, o);
  };
  visit(visit, e);
  return {syms.begin(), syms.end()};
}

// ---------------------------------------------------------------------------
// Point

void Point::set(std::string_view name, const Rational& value) { set_symbol(intern_symbol(name), value); }

void Point::set_symbol(int sym, const Rational& value) {
  exact_[sym] = value;
  Cached c;
  c.value = to_real(value);
  c.exponential = boost::multiprecision::exp(c.value);
  values_[sym] = std::move(c);
}

const Rational& Point::rational(int sym) const {
  auto it = exact_.find(sym);
  if (it == exact_.end()) throw UnboundSymbol(symbol_name(sym));
  return it->second;
}

const Real& Point::real(int sym) const {
  auto it = values_.find(sym);
  if (it == values_.end()) throw UnboundSymbol(symbol_name(sym));
  return it->second.value;
}

const Real& Point::exp(int sym) const {
  auto it = values_.find(sym);
  if (it == values_.end()) throw UnboundSymbol(symbol_name(sym));
  return it->second.exponential;
}

std::string Point::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [s, v] : exact_) {
    os << (first ? "" : ", ") << symbol_name(s) << ": " << v.get_str();
    first = false;
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// evaluation

Real evaluate(const Poly& f, const Point& p) {
  Real total = 0;
  for (const auto& [m, c] : f.terms()) {
    Real term = to_real(c);
    for (const auto& [g, e] : m.factors()) {
      const int sym = generator_symbol(g);
      if (is_exp_generator(g))
        term *= boost::multiprecision::pow(p.exp(sym), e);
      else
        term *= boost::multiprecision::pow(p.real(sym), e);
    }
    total += term;
  }
  return total;
}

Real evaluate(const RationalFunction& f, const Point& p) {
  const Real num = evaluate(f.numerator(), p);
  if (f.denominator().is_one()) return num;
  const Real den = evaluate(f.denominator(), p);
  if (boost::multiprecision::abs(den) < kSingularThreshold)
    throw SingularPoint("denominator vanishes at " + p.str());
  return num / den;
}

Real evaluate(const Expr& e, const Point& p) {
  switch (e.kind()) {
    case Expr::Kind::Canonical:
      return evaluate(e.normal(), p);
    case Expr::Kind::Sum: {
      Real acc = 0;
      for (const auto& t : e.operands()) acc += evaluate(t, p);
      return acc;
    }
    case Expr::Kind::Product: {
      Real acc = 1;
      for (const auto& t : e.operands()) acc *= evaluate(t, p);
      return acc;
    }
    case Expr::Kind::Power: {
      const Real b = evaluate(e.operands()[0], p);
      if (e.exponent() < 0 && boost::multiprecision::abs(b) < kSingularThreshold)
        throw SingularPoint("negative power of a vanishing base at " + p.str());
      return boost::multiprecision::pow(b, e.exponent());
    }
    case Expr::Kind::Quotient: {
      const Real d = evaluate(e.operands()[1], p);
      if (boost::multiprecision::abs(d) < kSingularThreshold)
        throw SingularPoint("denominator vanishes at " + p.str());
      return evaluate(e.operands()[0], p) / d;
    }
    case Expr::Kind::Exp:
      return boost::multiprecision::exp(evaluate(e.operands()[0], p));
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// zero testing

std::string to_string(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::ProvedZero:
      return "ProvedZero";
    case ZeroVerdict::NumericallyZero:
      return "NumericallyZero";
    case ZeroVerdict::NonZero:
      return "NonZero";
  }
  return {};
}

ZeroTest is_zero(const Expr& e, const SamplingOptions& opts) {
  ZeroTest out;
  out.max_abs = 0;
  std::optional<Expr> canon;
  try {
    canon = canonicalize(e);
  } catch (const std::domain_error&) {
    // Outside the canonical language: fall through to sampling.
  }
  if (canon && canon->normal().is_zero()) {
    out.verdict = ZeroVerdict::ProvedZero;
    return out;
  }
  const Expr& target = canon ? *canon : e;
  SampleBox box(free_symbols(target), opts.seed);
  const Real tau = Real(opts.tau_abs);
  std::size_t attempts = 0;
  while (out.points_used < opts.samples && attempts < opts.max_attempts) {
    ++attempts;
    Point pt = box.next();
    Real v;
    try {
      v = boost::multiprecision::abs(evaluate(target, pt));
    } catch (const SingularPoint&) {
      continue;
    }
    ++out.points_used;
    if (v > out.max_abs) out.max_abs = v;
    if (v >= tau) {
      out.verdict = ZeroVerdict::NonZero;
      out.witness = std::move(pt);
      return out;
    }
  }
  // A nonzero normal form is a nonzero function even when every sample is
  // below tolerance.
  out.verdict = (canon || out.points_used == 0) ? ZeroVerdict::NonZero : ZeroVerdict::NumericallyZero;
  return out;
}

// ---------------------------------------------------------------------------
// SampleBox

SampleBox::SampleBox(std::vector<int> symbols, std::uint64_t seed)
    : symbols_(std::move(symbols)), seed_(seed), rng_(seed) {}

Point SampleBox::next() {
  Point p;
  for (int s : symbols_) {
    const auto k = static_cast<long>(rng_() % (2 * kDenominator + 1)) - kDenominator;
    Rational v(k, kDenominator);
    v.canonicalize();
    p.set_symbol(s, v);
  }
  return p;
}

}  // namespace warpsgk::symexpr
