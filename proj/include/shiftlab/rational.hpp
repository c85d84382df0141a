#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace shiftlab {

/// Exact rational scalar used for every weight and every per-vertex quantity.
using Rational = mpq_class;

/// Parses "p/q" or an integer string. Throws std::invalid_argument on
/// malformed input or a zero denominator. The result is canonical.
Rational parse_rational(std::string_view text);

/// Canonical rendering: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

/// Integer power with a non-negative exponent.
Rational pow(const Rational& base, unsigned long exponent);

double to_double(const Rational& value);

}  // namespace shiftlab
