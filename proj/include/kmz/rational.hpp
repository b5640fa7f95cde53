#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kmz {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q" or "p" (optional sign). q must be positive; the result is
/// canonicalized. Throws Error(ParseError) otherwise.
Rational parse_rational(std::string_view text);

/// num/den in canonical form; den must be nonzero.
Rational fraction(const Integer& num, const Integer& den);

/// Canonical "p/q" form; integers are written without a denominator.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

bool is_integral(const Rational& q);
Integer floor_div(const Integer& a, const Integer& b);
Rational pow(const Rational& base, unsigned long exponent);
Integer factorial(unsigned long n);

bool is_zero(std::span<const Rational> v);

}  // namespace kmz
