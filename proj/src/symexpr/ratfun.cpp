#include "warpsgk/symexpr/ratfun.hpp"

#include <stdexcept>

namespace warpsgk::symexpr {

namespace {

Poly divide_or_throw(const Poly& a, const Poly& b) {
  auto q = exact_divide(a, b);
  if (!q) throw std::logic_error("internal: gcd does not divide operand");
  return *q;
}

Monomial exponential_part(const Monomial& m) {
  std::vector<Monomial::Factor> f;
  for (const auto& [g, e] : m.factors())
    if (is_exp_generator(g)) f.emplace_back(g, e);
  return Monomial(std::move(f));
}

}  // namespace

RationalFunction::RationalFunction(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("division by zero");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = divide_or_throw(num_, g);
      den_ = divide_or_throw(den_, g);
    }
  }
  normalize_units();
}

void RationalFunction::normalize_units() {
  if (num_.is_zero()) {
    den_ = Poly(Rational(1));
    return;
  }
  const Monomial unit = exponential_part(den_.monomial_content());
  if (!unit.is_one()) {
    const Monomial inv = Monomial().quotient(unit);
    den_ = den_.times_monomial(inv);
    num_ = num_.times_monomial(inv);
  }
  const Rational lc = den_.leading_term().second;
  if (lc != 1) {
    den_ = den_.scaled(1 / lc);
    num_ = num_.scaled(1 / lc);
  }
}

RationalFunction RationalFunction::operator-() const {
  return RationalFunction(-num_, den_, Reduced{});
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_.is_one() && o.den_.is_one()) return RationalFunction(num_ + o.num_, den_, Reduced{});
  if (den_ == o.den_) {
    RationalFunction r(num_ + o.num_, den_, Reduced{});
    r.normalize();
    return r;
  }
  // Henrici: with g = gcd(b, d), a/b + c/d = (a d' + c b') / (b' d' g) and
  // only g can share factors with the new numerator.
  Poly g = gcd(den_, o.den_);
  Poly b1 = g.is_one() ? den_ : divide_or_throw(den_, g);
  Poly d1 = g.is_one() ? o.den_ : divide_or_throw(o.den_, g);
  Poly num = num_ * d1 + o.num_ * b1;
  Poly den = b1 * o.den_;
  if (num.is_zero()) return RationalFunction();
  if (!g.is_one()) {
    Poly h = gcd(num, g);
    if (!h.is_one()) {
      num = divide_or_throw(num, h);
      den = divide_or_throw(den, h);
    }
  }
  RationalFunction r(std::move(num), std::move(den), Reduced{});
  r.normalize_units();
  return r;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  if (is_zero() || o.is_zero()) return RationalFunction();
  if (den_.is_one() && o.den_.is_one()) {
    RationalFunction r(num_ * o.num_, den_, Reduced{});
    return r;
  }
  // Cross-cancel: gcd(a, d) and gcd(c, b).
  Poly g1 = o.den_.is_one() ? Poly(Rational(1)) : gcd(num_, o.den_);
  Poly g2 = den_.is_one() ? Poly(Rational(1)) : gcd(o.num_, den_);
  Poly a = g1.is_one() ? num_ : divide_or_throw(num_, g1);
  Poly d = g1.is_one() ? o.den_ : divide_or_throw(o.den_, g1);
  Poly c = g2.is_one() ? o.num_ : divide_or_throw(o.num_, g2);
  Poly b = g2.is_one() ? den_ : divide_or_throw(den_, g2);
  RationalFunction r(a * c, b * d, Reduced{});
  r.normalize_units();
  return r;
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw std::domain_error("division by zero");
  RationalFunction inv(o.den_, o.num_, Reduced{});
  inv.normalize_units();
  return *this * inv;
}

RationalFunction RationalFunction::pow(int e) const {
  if (e == 0) return RationalFunction(Rational(1));
  if (e < 0) {
    if (is_zero()) throw std::domain_error("zero raised to a negative power");
    RationalFunction inv(den_, num_, Reduced{});
    inv.normalize_units();
    return inv.pow(-e);
  }
  RationalFunction r(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), Reduced{});
  r.normalize_units();
  return r;
}

RationalFunction RationalFunction::derivative(int sym) const {
  Poly dn = num_.derivative(sym);
  if (den_.is_constant()) return RationalFunction(dn, den_, Reduced{});
  Poly dd = den_.derivative(sym);
  if (dd.is_zero()) return RationalFunction(dn, den_);
  return RationalFunction(dn * den_ - num_ * dd, den_ * den_);
}

std::string to_string(const RationalFunction& f) {
  const std::string n = to_string(f.numerator());
  if (f.denominator().is_one()) return n;
  const bool simple_num = f.numerator().terms().size() == 1;
  return (simple_num ? n : "(" + n + ")") + "/(" + to_string(f.denominator()) + ")";
}

}  // namespace warpsgk::symexpr
