#include "crystalkit/poly.hpp"

#include <sstream>

#include "crystalkit/error.hpp"

namespace crystalkit {

namespace {

template <typename Vec>
void trim_zeros(Vec& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

template <typename Coeff>
std::string poly_text(const std::vector<Coeff>& coeff,
                      const std::string& (*fmt)(const Coeff&, std::string&)) {
  if (coeff.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    if (coeff[k] == 0) continue;
    std::string buf;
    const std::string& text = fmt(coeff[k], buf);
    bool negative = !text.empty() && text[0] == '-';
    std::string magnitude = negative ? text.substr(1) : text;
    if (first) {
      if (negative) out << "-";
      first = false;
    } else {
      out << (negative ? " - " : " + ");
    }
    if (k == 0) {
      out << magnitude;
    } else {
      if (magnitude != "1") out << magnitude << "*";
      out << "t";
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

const std::string& fmt_mpz(const mpz_class& c, std::string& buf) {
  buf = c.get_str();
  return buf;
}

const std::string& fmt_mpq(const mpq_class& c, std::string& buf) {
  if (c.get_den() == 1) {
    buf = c.get_num().get_str();
  } else {
    buf = c.get_num().get_str() + "/" + c.get_den().get_str();
  }
  return buf;
}

}  // namespace

IntPoly IntPoly::from_coeffs(std::vector<mpz_class> c) {
  trim_zeros(c);
  return IntPoly{std::move(c)};
}

IntPoly IntPoly::constant(const mpz_class& c) {
  return from_coeffs({c});
}

IntPoly IntPoly::monomial(const mpz_class& c, std::size_t power) {
  std::vector<mpz_class> v(power + 1, 0);
  v[power] = c;
  return from_coeffs(std::move(v));
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string IntPoly::to_string() const { return poly_text(coeff, fmt_mpz); }

IntPoly ipoly_add(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> c(std::max(a.coeff.size(), b.coeff.size()), 0);
  for (std::size_t i = 0; i < a.coeff.size(); ++i) c[i] += a.coeff[i];
  for (std::size_t i = 0; i < b.coeff.size(); ++i) c[i] += b.coeff[i];
  return IntPoly::from_coeffs(std::move(c));
}

IntPoly ipoly_sub(const IntPoly& a, const IntPoly& b) {
  std::vector<mpz_class> c(std::max(a.coeff.size(), b.coeff.size()), 0);
  for (std::size_t i = 0; i < a.coeff.size(); ++i) c[i] += a.coeff[i];
  for (std::size_t i = 0; i < b.coeff.size(); ++i) c[i] -= b.coeff[i];
  return IntPoly::from_coeffs(std::move(c));
}

IntPoly ipoly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly{};
  std::vector<mpz_class> c(a.coeff.size() + b.coeff.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeff.size(); ++i) {
    for (std::size_t j = 0; j < b.coeff.size(); ++j) {
      c[i + j] += a.coeff[i] * b.coeff[j];
    }
  }
  return IntPoly::from_coeffs(std::move(c));
}

RatPoly RatPoly::from_coeffs(std::vector<mpq_class> c) {
  for (auto& q : c) q.canonicalize();
  trim_zeros(c);
  return RatPoly{std::move(c)};
}

RatPoly RatPoly::constant(const mpq_class& c) { return from_coeffs({c}); }

RatPoly RatPoly::from_int(const IntPoly& p) {
  std::vector<mpq_class> c;
  c.reserve(p.coeff.size());
  for (const auto& z : p.coeff) c.emplace_back(z);
  return RatPoly{std::move(c)};
}

mpq_class RatPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * x + *it;
  acc.canonicalize();
  return acc;
}

std::string RatPoly::to_string() const { return poly_text(coeff, fmt_mpq); }

RatPoly poly_add(const RatPoly& a, const RatPoly& b) {
  std::vector<mpq_class> c(std::max(a.coeff.size(), b.coeff.size()), 0);
  for (std::size_t i = 0; i < a.coeff.size(); ++i) c[i] += a.coeff[i];
  for (std::size_t i = 0; i < b.coeff.size(); ++i) c[i] += b.coeff[i];
  return RatPoly::from_coeffs(std::move(c));
}

RatPoly poly_sub(const RatPoly& a, const RatPoly& b) {
  std::vector<mpq_class> c(std::max(a.coeff.size(), b.coeff.size()), 0);
  for (std::size_t i = 0; i < a.coeff.size(); ++i) c[i] += a.coeff[i];
  for (std::size_t i = 0; i < b.coeff.size(); ++i) c[i] -= b.coeff[i];
  return RatPoly::from_coeffs(std::move(c));
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly{};
  std::vector<mpq_class> c(a.coeff.size() + b.coeff.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeff.size(); ++i) {
    for (std::size_t j = 0; j < b.coeff.size(); ++j) {
      c[i + j] += a.coeff[i] * b.coeff[j];
    }
  }
  return RatPoly::from_coeffs(std::move(c));
}

RatPoly poly_scale(const RatPoly& a, const mpq_class& c) {
  std::vector<mpq_class> out = a.coeff;
  for (auto& q : out) q *= c;
  return RatPoly::from_coeffs(std::move(out));
}

std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) {
    fail(ErrorCode::Invalid, "polynomial division by zero");
  }
  std::vector<mpq_class> rem = a.coeff;
  std::vector<mpq_class> quot;
  long db = b.degree();
  if (static_cast<long>(rem.size()) - 1 >= db) {
    quot.assign(rem.size() - db, 0);
  }
  const mpq_class& lead = b.coeff.back();
  while (static_cast<long>(rem.size()) - 1 >= db && !rem.empty()) {
    mpq_class factor = rem.back() / lead;
    factor.canonicalize();
    std::size_t shift = rem.size() - 1 - static_cast<std::size_t>(db);
    quot[shift] = factor;
    for (std::size_t i = 0; i < b.coeff.size(); ++i) {
      rem[shift + i] -= factor * b.coeff[i];
    }
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  return {RatPoly::from_coeffs(std::move(quot)),
          RatPoly::from_coeffs(std::move(rem))};
}

RatPoly poly_monic(const RatPoly& a) {
  if (a.is_zero()) return a;
  mpq_class inv = mpq_class(1) / a.coeff.back();
  return poly_scale(a, inv);
}

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a;
  RatPoly y = b;
  while (!y.is_zero()) {
    RatPoly r = poly_divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return poly_monic(x);
}

}  // namespace crystalkit
