#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace derand {

using Rational = mpq_class;
using Integer = mpz_class;

/// 2^k as an exact rational (k may be negative).
Rational pow2(long k);
/// "num/den", always with an explicit denominator ("0/1", "1/1").
std::string to_string(const Rational& r);
/// Parses "num/den", an integer, or "2^-k".
Rational parse_rational(std::string_view text);

Integer to_integer(std::uint64_t v);
double to_double(const Rational& r);

} // namespace derand
