#include "warpsgk/symexpr/real.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace warpsgk {

namespace {
unsigned g_digits = 0;
}

void set_working_digits(unsigned digits) {
  if (digits == 0) {
    digits = kDefaultDigits;
    if (const char* env = std::getenv("WARPSGK_DIGITS")) {
      char* end = nullptr;
      const unsigned long v = std::strtoul(env, &end, 10);
      if (end != env && v > 0) digits = static_cast<unsigned>(v);
    }
  }
  g_digits = std::max(digits, kMinDigits);
  Real::default_precision(g_digits);
}

unsigned working_digits() {
  if (g_digits == 0) set_working_digits();
  return g_digits;
}

namespace {
// values built before any library call (test fixtures, literals in main) get the working precision too
const unsigned g_startup_digits = working_digits();
}  // namespace

Real to_real(const mpq_class& q) {
  working_digits();
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace warpsgk
