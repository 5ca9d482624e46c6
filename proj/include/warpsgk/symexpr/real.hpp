#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <string>

namespace warpsgk {

/// Working-precision real. Precision is runtime-configurable (decimal
/// digits) and never drops below 50 significant digits.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

inline constexpr unsigned kMinDigits = 50;
inline constexpr unsigned kDefaultDigits = 64;

/// Sets the default precision for newly constructed Reals. Reads
/// WARPSGK_DIGITS when called with 0.
void set_working_digits(unsigned digits = 0);
unsigned working_digits();

Real to_real(const mpq_class& q);
/// Shortest-ish decimal rendering with the given number of significant digits.
std::string format_real(const Real& x, int digits = 20);
double to_double(const Real& x);

}  // namespace warpsgk
