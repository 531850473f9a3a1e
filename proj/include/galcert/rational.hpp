#pragma once

// Exact rationals backed by GMP. Values are always kept canonical
// (reduced, positive denominator).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace galcert {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "123", "-4.5", "10.39" exactly. Throws std::invalid_argument.
Rational parse_decimal(std::string_view text);

// Parses "p/q" or an integer, or a decimal. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Exact decimal expansion when the denominator has only the factors 2 and 5;
// throws std::invalid_argument otherwise.
std::string to_decimal_string(const Rational& value);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

std::strong_ordering cmp(const Rational& a, const Rational& b);

Integer ipow(const Integer& base, unsigned long exponent);
Rational ipow(const Rational& base, long exponent);

bool is_prime(std::int64_t n);

}  // namespace galcert
