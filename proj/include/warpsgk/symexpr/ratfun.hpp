#pragma once

#include "warpsgk/symexpr/poly.hpp"

#include <string>

namespace warpsgk::symexpr {

/// Reduced quotient of two polynomials in coordinates and exponentials.
///
/// Normal form: numerator and denominator coprime; the denominator carries
/// no exponential monomial factor (those are units and live in the
/// numerator) and its leading coefficient is 1. Two rational functions are
/// equal as functions iff their normal forms compare equal.
class RationalFunction {
 public:
  RationalFunction() : den_(Rational(1)) {}
  explicit RationalFunction(const Rational& c) : num_(c), den_(Rational(1)) {}
  explicit RationalFunction(Poly p) : num_(std::move(p)), den_(Rational(1)) {}
  /// Throws std::domain_error if den is the zero polynomial.
  RationalFunction(const Poly& num, const Poly& den);

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  /// Throws std::domain_error on division by the zero function.
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction pow(int e) const;

  RationalFunction derivative(int sym) const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

 private:
  struct Reduced {};
  RationalFunction(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();
  /// Unit and scale normalisation only; num/den already coprime.
  void normalize_units();

  Poly num_;
  Poly den_;
};

std::string to_string(const RationalFunction& f);

}  // namespace warpsgk::symexpr
