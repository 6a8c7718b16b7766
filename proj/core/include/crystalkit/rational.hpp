#pragma once

#include <gmpxx.h>

#include <string>

namespace crystalkit {

// Parses "p/q" or "p" (base 10) into a canonical rational. Throws
// Error(Parse) on malformed input or zero denominator.
mpq_class parse_rational(const std::string& text);

// Canonical "p/q" form; the denominator is always written, so "3" -> "3/1".
std::string format_rational(const mpq_class& value);

// Natural logarithm that stays accurate for values far outside double range.
double log_mpz(const mpz_class& value);
double log_mpq(const mpq_class& value);

// value^exponent for integer exponent (exponent may be negative).
mpq_class pow_rational(const mpq_class& value, long exponent);

// value^{-beta} through exp/log; value must be positive.
double pow_neg_beta(const mpq_class& value, double beta);

}  // namespace crystalkit
