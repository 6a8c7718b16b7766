#include "crystalkit/hull.hpp"

#include <sstream>

#include "crystalkit/error.hpp"

namespace crystalkit {

HullElement InverseHull::element(const MonoidElement& a,
                                 const MonoidElement& b) const {
  HullElement x;
  x.zero = false;
  x.a = a;
  x.b = b;
  return x;
}

HullElement InverseHull::from_monoid(const MonoidElement& a) const {
  return element(a, monoid_.identity());
}

HullElement InverseHull::compose(const HullElement& x,
                                 const HullElement& y) const {
  if (x.zero || y.zero) return zero();
  LcmResult meet = monoid_.lcm(x.b, y.a);
  if (meet.disjoint) return zero();
  std::optional<MonoidElement> f = monoid_.left_divide(x.b, meet.element);
  std::optional<MonoidElement> e = monoid_.left_divide(y.a, meet.element);
  if (!f || !e) {
    fail(ErrorCode::Invalid, "least common multiple is not a common multiple");
  }
  return element(monoid_.multiply(x.a, *f), monoid_.multiply(y.b, *e));
}

HullElement InverseHull::inverse(const HullElement& x) const {
  if (x.zero) return zero();
  return element(x.b, x.a);
}

bool InverseHull::is_idempotent(const HullElement& x) const {
  if (x.zero) return true;
  return x.a == x.b;
}

HullElement InverseHull::idempotent_of(const HullElement& x) const {
  if (x.zero) return zero();
  return element(x.b, x.b);
}

mpq_class InverseHull::hull_scale(const HullElement& x) const {
  if (x.zero) {
    fail(ErrorCode::Invalid, "the zero element has no scale value");
  }
  mpq_class value = monoid_.scale_value(x.a) / monoid_.scale_value(x.b);
  value.canonicalize();
  return value;
}

bool InverseHull::ecx_member_hull(const HullElement& p) const {
  if (p.zero) {
    fail(ErrorCode::NotIdempotent,
         "the zero element is not an ideal projection");
  }
  if (!is_idempotent(p)) {
    fail(ErrorCode::NotIdempotent,
         "element " + to_string(p) + " is not idempotent");
  }
  return monoid_.kernel_member(p.a);
}

HullCrystalCertificate InverseHull::crystal_certificate_hull(
    const mpq_class& value_bound, std::size_t size_bound) const {
  HullCrystalCertificate cert;
  std::vector<MonoidElement> generators =
      monoid_.enumerate_elements(value_bound, size_bound);

  for (const MonoidElement& a : generators) {
    HullIdempotentWitness witness;
    witness.ideal_generator = a;
    witness.crystal_member = monoid_.kernel_member(a);

    // Search for a scale-violating g = x * a^{-1} with x of strictly smaller
    // scale value; g^{-1} g = p_{aS} and N_I(g) = N(x)/N(a) < 1. Scanning in
    // enumeration order finds the identity first whenever N(a) > 1.
    for (const MonoidElement& x : generators) {
      if (monoid_.scale_value(x) < monoid_.scale_value(a)) {
        witness.violator = element(x, a);
        break;
      }
    }

    bool found = witness.violator.has_value();
    if (found == witness.crystal_member) {
      cert.pass = false;
      std::ostringstream out;
      out << "idempotent for ideal generated by " << monoid_.to_string(a)
          << ": membership claim " << (witness.crystal_member ? "true" : "false")
          << " contradicted by bounded search";
      cert.detail = out.str();
    }
    cert.idempotents.push_back(std::move(witness));
  }

  // Kernel pairs must compose to kernel pairs (or zero): the crystal part is
  // closed under the product.
  std::vector<MonoidElement> kernel = monoid_.enumerate_kernel(size_bound);
  for (const MonoidElement& a : kernel) {
    for (const MonoidElement& b : kernel) {
      for (const MonoidElement& c : kernel) {
        for (const MonoidElement& d : kernel) {
          HullElement z = compose(element(a, b), element(c, d));
          ++cert.kernel_pairs_checked;
          if (!z.zero && (!monoid_.kernel_member(z.a) ||
                          !monoid_.kernel_member(z.b))) {
            cert.kernel_closure_ok = false;
            cert.pass = false;
            cert.detail = "kernel pair product " + to_string(z) +
                          " left the kernel";
          }
        }
      }
    }
  }

  if (cert.pass && cert.detail.empty()) {
    std::ostringstream out;
    out << "checked " << cert.idempotents.size()
        << " ideal projections and " << cert.kernel_pairs_checked
        << " kernel pair products";
    cert.detail = out.str();
  }
  return cert;
}

std::string InverseHull::to_string(const HullElement& x) const {
  if (x.zero) return "0";
  return "(" + monoid_.to_string(x.a) + "," + monoid_.to_string(x.b) + ")";
}

}  // namespace crystalkit
