#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace torsionlab {

using Rational = mpq_class;

/// Parses "p", "p/q" or a finite decimal such as "-1.25" into an exact
/// rational. Throws std::invalid_argument on malformed input or q = 0.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is 1).
std::string to_string(const Rational& value);

/// log|value| without converting the rational to double first, so it stays
/// finite for numerators/denominators far outside the double range.
long double log_abs(const Rational& value);

}  // namespace torsionlab
