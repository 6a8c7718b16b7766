#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crystalkit/monoid.hpp"

namespace crystalkit {

// Element a*b^{-1} of the inverse hull of the left-regular representation of
// a right-LCM monoid: the partial bijection bS -> aS, by |-> ay, plus the
// absorbing zero (empty map). Pairs are canonical: distinct pairs are
// distinct partial bijections (the monoids here have trivial unit group).
struct HullElement {
  bool zero = true;
  MonoidElement a;
  MonoidElement b;

  friend bool operator==(const HullElement& x, const HullElement& y) {
    if (x.zero || y.zero) return x.zero == y.zero;
    return x.a == y.a && x.b == y.b;
  }
};

struct HullIdempotentWitness {
  MonoidElement ideal_generator;           // a, for the idempotent p_{aS}
  bool crystal_member = false;             // a in ker N
  std::optional<HullElement> violator;     // g with g^{-1}g = p_{aS}, N_I(g) < 1
};

struct HullCrystalCertificate {
  bool pass = true;
  std::string detail;
  std::vector<HullIdempotentWitness> idempotents;
  unsigned long kernel_pairs_checked = 0;
  bool kernel_closure_ok = true;
};

class InverseHull {
 public:
  explicit InverseHull(ScaledMonoid monoid) : monoid_(std::move(monoid)) {}

  const ScaledMonoid& monoid() const { return monoid_; }

  HullElement zero() const { return HullElement{}; }
  HullElement element(const MonoidElement& a, const MonoidElement& b) const;
  HullElement from_monoid(const MonoidElement& a) const;  // a * e^{-1}

  // (a,b)(c,d) = (a f, d e) where bS n cS = rS with r = b f = c e; zero when
  // the ideals are disjoint.
  HullElement compose(const HullElement& x, const HullElement& y) const;
  HullElement inverse(const HullElement& x) const;
  bool is_idempotent(const HullElement& x) const;
  // Domain projection x^{-1} x = p_{bS}.
  HullElement idempotent_of(const HullElement& x) const;

  // N_I(a*b^{-1}) = N(a)/N(b); rejects the zero element.
  mpq_class hull_scale(const HullElement& x) const;

  // Whether the idempotent p_{aS} survives into the crystal: no g with
  // g^{-1} g = p_{aS} and N_I(g) < 1 exists, which here means a in ker N.
  bool ecx_member_hull(const HullElement& p) const;

  // Bounded certificate: for every idempotent with component value <= bound,
  // membership matches {p_{sS} : s in ker N}, witnessed by an explicit
  // scale-violating g for every off-kernel idempotent; additionally checks
  // that kernel pairs are closed under composition.
  HullCrystalCertificate crystal_certificate_hull(const mpq_class& value_bound,
                                                  std::size_t size_bound) const;

  std::string to_string(const HullElement& x) const;

 private:
  ScaledMonoid monoid_;
};

}  // namespace crystalkit
