#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace warpsgk::symexpr {

using Rational = mpq_class;

/// Process-wide interning of coordinate names. Ids are stable for the life
/// of the process and the table only ever grows.
int intern_symbol(std::string_view name);
const std::string& symbol_name(int id);

/// A generator is either the coordinate itself or its exponential.
/// Generators of one coordinate are adjacent: 2*sym (x) and 2*sym+1 (e^x).
inline int coord_generator(int sym) { return 2 * sym; }
inline int exp_generator(int sym) { return 2 * sym + 1; }
inline int generator_symbol(int gen) { return gen / 2; }
inline bool is_exp_generator(int gen) { return (gen & 1) != 0; }

/// Sparse power product of generators, sorted by generator, zero exponents
/// omitted. Coordinate exponents are non-negative; exponential exponents may
/// be negative (e^{kx} is a unit).
class Monomial {
 public:
  using Factor = std::pair<int, int>;  // (generator, exponent)

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);

  static Monomial generator(int gen, int exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int exponent(int gen) const;

  Monomial operator*(const Monomial& other) const;
  /// Exponentwise quotient; may produce negative coordinate exponents, which
  /// callers must rule out.
  Monomial quotient(const Monomial& other) const;
  /// Exponentwise minimum over the union of generators (missing = 0).
  static Monomial meet(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Polynomial in coordinates and exponentials of coordinates with rational
/// coefficients. Value type; the term map never stores zero coefficients.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly() = default;
  explicit Poly(const Rational& c);
  Poly(const Monomial& m, const Rational& c);

  static Poly coordinate(int sym) { return Poly(Monomial::generator(coord_generator(sym)), 1); }
  static Poly exponential(int sym, int k = 1) {
    return Poly(Monomial::generator(exp_generator(sym), k), 1);
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// Constant term value if the polynomial is constant.
  std::optional<Rational> constant_value() const;

  /// Generators that appear with nonzero exponent.
  std::vector<int> generators() const;
  std::vector<int> symbols() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly scaled(const Rational& c) const;
  Poly times_monomial(const Monomial& m) const;
  Poly pow(unsigned e) const;

  /// Largest monomial in term order and its coefficient.
  const std::pair<const Monomial, Rational>& leading_term() const;

  /// Componentwise minimum exponent over all terms (coordinate and
  /// exponential generators alike).
  Monomial monomial_content() const;

  Poly derivative(int sym) const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

/// Greatest common divisor in Q[x, e^{±x}], normalised to have non-negative
/// exponents, no exponential content and leading coefficient 1.
Poly gcd(const Poly& a, const Poly& b);

/// Exact quotient a / b if b divides a in Q[x, e^{±x}].
std::optional<Poly> exact_divide(const Poly& a, const Poly& b);

std::string to_string(const Poly& p);

}  // namespace warpsgk::symexpr
