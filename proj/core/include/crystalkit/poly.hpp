#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace crystalkit {

// Polynomial in t with integer coefficients, ascending degree order,
// normalized so the coefficient list never ends in zero (zero = empty list).
struct IntPoly {
  std::vector<mpz_class> coeff;

  static IntPoly from_coeffs(std::vector<mpz_class> c);
  static IntPoly constant(const mpz_class& c);
  static IntPoly monomial(const mpz_class& c, std::size_t power);

  bool is_zero() const { return coeff.empty(); }
  long degree() const { return static_cast<long>(coeff.size()) - 1; }
  mpz_class eval(const mpz_class& x) const;
  std::string to_string() const;

  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    return a.coeff == b.coeff;
  }
};

IntPoly ipoly_add(const IntPoly& a, const IntPoly& b);
IntPoly ipoly_sub(const IntPoly& a, const IntPoly& b);
IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b);

// Polynomial in t with rational coefficients (exact), same normalization.
struct RatPoly {
  std::vector<mpq_class> coeff;

  static RatPoly from_coeffs(std::vector<mpq_class> c);
  static RatPoly constant(const mpq_class& c);
  static RatPoly from_int(const IntPoly& p);

  bool is_zero() const { return coeff.empty(); }
  long degree() const { return static_cast<long>(coeff.size()) - 1; }
  bool is_monic() const { return !coeff.empty() && coeff.back() == 1; }
  mpq_class eval(const mpq_class& x) const;
  std::string to_string() const;

  friend bool operator==(const RatPoly& a, const RatPoly& b) {
    return a.coeff == b.coeff;
  }
};

RatPoly poly_add(const RatPoly& a, const RatPoly& b);
RatPoly poly_sub(const RatPoly& a, const RatPoly& b);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_scale(const RatPoly& a, const mpq_class& c);
// Euclidean division; divisor must be nonzero.
std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b);
// Monic gcd (zero when both inputs are zero).
RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);
RatPoly poly_monic(const RatPoly& a);

}  // namespace crystalkit
