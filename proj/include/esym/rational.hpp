#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace esym {

/// Arbitrary-precision integer.
using BigInt = mpz_class;

/// Exact rational in lowest terms with positive denominator (GMP keeps
/// results of arithmetic canonical; parse_rational canonicalizes input).
using Rational = mpq_class;

/// Parses `["-"] digits ["/" digits]`. Throws PreconditionError on malformed
/// text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise. This is the atom form of the formula grammar.
std::string to_string(const Rational& value);

/// Always "p/q", including "3/1". Used by the polynomial text form.
std::string to_fraction_string(const Rational& value);

BigInt binomial(unsigned long n, unsigned long k);

}  // namespace esym
