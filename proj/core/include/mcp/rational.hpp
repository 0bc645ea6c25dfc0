#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace mcp {

/// Exact rational number. GMP keeps values in canonical lowest-terms form
/// with a positive denominator as long as they are built through the
/// canonicalizing entry points below; raw mpq_class string construction is
/// not canonical and must go through parse_rat instead.
using Rat = mpq_class;

/// num/den as an exact rational. Throws InputError when den == 0.
Rat rat(long num, long den = 1);

/// 2^exp for any (possibly negative) exponent.
Rat pow2(long exp);

/// Parses "n", "-n/d", or "n/2^e" into a canonical rational.
/// Accepts an optional leading sign and arbitrary-precision digits; rejects
/// anything else (decimals, whitespace inside the token, den == 0).
Rat parse_rat(const std::string& text);

/// Canonical textual form: "n" for integers, "n/d" otherwise.
std::string to_string(const Rat& q);

/// Fixed-point decimal rendering with the given number of fractional digits,
/// truncated toward zero. Display only; never used in computations.
std::string to_decimal(const Rat& q, int digits = 6);

/// True when q is an integer multiple of 2^-max_exp.
bool is_dyadic(const Rat& q, unsigned max_exp);

/// "a/b, c/d, ..." rendering of a rational vector.
std::string to_string(const std::vector<Rat>& v);

}  // namespace mcp
