#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ctrump {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a/b", an integer, or a decimal literal ("0.05", "1.5e-3") into an
/// exact rational. Decimal literals are converted digit by digit, never via
/// binary floating point. Throws DomainError on malformed text.
Rational parse_rational(std::string_view text);

/// "a/b" in lowest terms, or "a" when the denominator is one.
std::string to_string(const Rational& r);

/// Closest rational with denominator at most `max_denominator`, by
/// continued-fraction convergents and semiconvergents.
Rational rationalize(double x, const Integer& max_denominator);

} // namespace ctrump
