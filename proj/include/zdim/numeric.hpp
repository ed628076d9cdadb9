#pragma once

// Exact and extended-precision number carriers shared by every module.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

namespace zdim {

using Integer = mpz_class;
using Rational = mpq_class;

// 128-bit significand. Fractional powers |I|^alpha and logarithms are
// evaluated here; relative rounding error stays below 2^-120 for the
// magnitudes this library handles.
using HighFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

/// Parses "p/q", "p" or a finite decimal such as "-1.25" into an exact
/// rational. Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

HighFloat to_high(const Integer& z);
HighFloat to_high(const Rational& r);
inline HighFloat to_high(std::int64_t v) { return HighFloat(v); }

double to_double(const Integer& z);

/// Natural log of a positive integer, in double. Safe for values far
/// beyond the double range of the integer itself.
double log_double(const Integer& z);

Integer floor_div(const Integer& num, const Integer& den);
Integer ceil_div(const Integer& num, const Integer& den);
Integer floor(const Rational& r);
Integer ceil(const Rational& r);

/// Largest m >= 0 with m^k <= n for n >= 0 (exact integer root).
Integer iroot(const Integer& n, unsigned long k);

/// If z^(p/q) is an integer, returns it exactly.
std::optional<Integer> exact_rational_power(const Integer& z, const Rational& exponent);

inline bool fits_int64(const Integer& z) { return z.fits_slong_p() != 0; }

}  // namespace zdim
