#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rmcalc {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "7", "-3/4", "0.4", "-1.25e-3". Decimals convert exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
double to_double(const Rational& q);

// gcd of numerators over lcm of denominators; gcd(0, b) = |b|.
Rational rational_gcd(const Rational& a, const Rational& b);

Rational pow(const Rational& base, unsigned exponent);

}  // namespace rmcalc
