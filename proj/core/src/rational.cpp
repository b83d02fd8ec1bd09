#include "opcone/rational.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>

#include "opcone/error.hpp"

namespace opcone {

namespace {

Rational floor_of(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

// Simplest rational strictly inside (lo, hi), with 0 <= lo < hi. An empty `hi`
// stands for +infinity.
Rational simplest_between(Rational lo, const Rational* hi) {
  const Rational fl = floor_of(lo);
  const Rational next = fl + 1;
  if (hi == nullptr || next < *hi) return next;
  // Both ends share the integer part fl, and hi <= fl + 1.
  const Rational lo_frac = lo - fl;
  const Rational hi_frac = *hi - fl;
  const Rational inv_lo_bound = 1 / hi_frac;
  if (lo_frac == 0) {
    Rational tail = simplest_between(inv_lo_bound, nullptr);
    return fl + 1 / tail;
  }
  const Rational inv_hi_bound = 1 / lo_frac;
  Rational tail = simplest_between(inv_lo_bound, &inv_hi_bound);
  return fl + 1 / tail;
}

}  // namespace

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw InvalidProblem("non-finite value cannot be converted to a rational");
  Rational q(x);
  q.canonicalize();
  return q;
}

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw InvalidProblem("non-finite value cannot be converted to a rational");
  if (x == 0.0) return Rational(0);
  const bool negative = x < 0.0;
  const double ax = std::abs(x);
  const Rational center = exact_rational(ax);
  const Rational below = exact_rational(std::nextafter(ax, 0.0));
  const Rational above = exact_rational(std::nextafter(ax, std::numeric_limits<double>::infinity()));
  const Rational lo = (center + below) / 2;
  const Rational hi = (center + above) / 2;
  Rational q = simplest_between(lo, &hi);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

double to_double(const Rational& q) {
  const double t = q.get_d();
  if (!std::isfinite(t)) return t;
  const double away = std::nextafter(t, q < 0 ? -std::numeric_limits<double>::infinity()
                                                : std::numeric_limits<double>::infinity());
  if (!std::isfinite(away)) return t;
  const Rational dt = abs(q - exact_rational(t));
  const Rational da = abs(exact_rational(away) - q);
  if (da < dt) return away;
  if (dt < da) return t;
  std::int64_t bits = 0;
  std::memcpy(&bits, &t, sizeof bits);
  return (bits & 1) == 0 ? t : away;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace opcone
