// Exact rational scalars on top of GMP, plus parsing and formatting helpers.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace qwalk {

using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Formats as "p" for integers and "p/q" otherwise, matching the document format.
std::string to_string(const Rational& q);

// Accepts an optional sign, digits, and an optional "/digits" part. Throws
// Error(MalformedDocument) on anything else, including a zero denominator.
Rational parse_rational(const std::string& text);

Rational rational_pow(const Rational& base, long exponent);

// Exact square root when the value is a perfect square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

}  // namespace qwalk
