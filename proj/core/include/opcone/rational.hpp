#pragma once

#include <gmpxx.h>

#include <string>

namespace opcone {

using Rational = mpq_class;

/// Reads a double as the simplest rational (smallest denominator) that rounds to it.
/// Decimal literals come back as the intended fraction: 0.1 -> 1/10, 3.6 -> 18/5.
Rational to_rational(double x);

/// The exact binary value of a double.
Rational exact_rational(double x);

/// Nearest double, ties to even. (mpq get_d truncates.)
double to_double(const Rational& q);

/// "num/den", or "num" for integers.
std::string to_string(const Rational& q);

}  // namespace opcone
