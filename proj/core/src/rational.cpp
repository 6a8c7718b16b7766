#include "crystalkit/rational.hpp"

#include <cmath>

#include "crystalkit/error.hpp"

namespace crystalkit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "PARSE";
    case ErrorCode::FamilyMismatch: return "FAMILY_MISMATCH";
    case ErrorCode::Disjoint: return "DISJOINT";
    case ErrorCode::NotEquivalent: return "NOT_EQUIVALENT";
    case ErrorCode::NotIdempotent: return "NOT_IDEMPOTENT";
    case ErrorCode::NonKernel: return "NON_KERNEL";
    case ErrorCode::NonAbelianKernel: return "NON_ABELIAN_KERNEL";
    case ErrorCode::Divergent: return "DIVERGENT";
    case ErrorCode::BoundExceeded: return "BOUND_EXCEEDED";
    case ErrorCode::Undecided: return "UNDECIDED";
    case ErrorCode::Invalid: return "INVALID";
  }
  return "UNKNOWN";
}

mpq_class parse_rational(const std::string& text) {
  if (text.empty()) fail(ErrorCode::Parse, "empty rational literal");
  mpq_class q;
  if (q.set_str(text, 10) != 0) {
    fail(ErrorCode::Parse, "malformed rational literal: " + text);
  }
  if (q.get_den() == 0) {
    fail(ErrorCode::Parse, "zero denominator in rational literal: " + text);
  }
  q.canonicalize();
  return q;
}

std::string format_rational(const mpq_class& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double log_mpz(const mpz_class& value) {
  signed long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * M_LN2;
}

double log_mpq(const mpq_class& value) {
  return log_mpz(value.get_num()) - log_mpz(value.get_den());
}

mpq_class pow_rational(const mpq_class& value, long exponent) {
  if (exponent == 0) return 1;
  const unsigned long n =
      exponent > 0 ? static_cast<unsigned long>(exponent)
                   : static_cast<unsigned long>(-exponent);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value.get_num().get_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), value.get_den().get_mpz_t(), n);
  mpq_class out;
  if (exponent > 0) {
    out = mpq_class(num) / mpq_class(den);
  } else {
    if (num == 0) fail(ErrorCode::Invalid, "zero to a negative power");
    out = mpq_class(den) / mpq_class(num);
  }
  out.canonicalize();
  return out;
}

double pow_neg_beta(const mpq_class& value, double beta) {
  if (value <= 0) fail(ErrorCode::Invalid, "power base must be positive");
  if (value == 1) return 1.0;
  return std::exp(-beta * log_mpq(value));
}

}  // namespace crystalkit
