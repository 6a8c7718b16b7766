#include "crystalkit/finite.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "crystalkit/error.hpp"
#include "crystalkit/rational.hpp"

namespace crystalkit {

std::vector<std::size_t> FiniteInverseSemigroup::nonzero_idempotents() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (is_idempotent(i) && !is_zero(i)) out.push_back(i);
  }
  return out;
}

std::size_t FiniteInverseSemigroup::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  fail(ErrorCode::Invalid, "unknown element name: " + name);
}

ValidationReport validate(FiniteInverseSemigroup& I, const FiniteScale& N) {
  ValidationReport report;
  const std::size_t n = I.size();
  auto violation = [&](const std::string& detail) {
    report.ok = false;
    report.detail = detail;
    return report;
  };

  if (n == 0) return violation("empty element list");
  if (I.table.size() != n) return violation("table row count differs from element count");
  for (std::size_t i = 0; i < n; ++i) {
    if (I.table[i].size() != n) {
      return violation("table row " + I.names[i] + " has wrong width");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (I.table[i][j] >= n) {
        return violation("table entry out of range at (" + I.names[i] + "," +
                         I.names[j] + ")");
      }
    }
  }

  if (I.has_zero) {
    for (std::size_t i = 0; i < n; ++i) {
      if (I.mul(0, i) != 0 || I.mul(i, 0) != 0) {
        return violation("zero is not absorbing at " + I.names[i]);
      }
    }
  }

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        std::size_t left = I.mul(I.mul(x, y), z);
        std::size_t right = I.mul(x, I.mul(y, z));
        if (left != right) {
          return violation("associativity fails at (" + I.names[x] + "," +
                           I.names[y] + "," + I.names[z] + "): " +
                           I.names[left] + " != " + I.names[right]);
        }
      }
    }
  }

  I.idempotent.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) I.idempotent[i] = I.mul(i, i) == i;

  I.inverse.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> candidates;
    for (std::size_t y = 0; y < n; ++y) {
      if (I.mul(I.mul(x, y), x) == x && I.mul(I.mul(y, x), y) == y) {
        candidates.push_back(y);
      }
    }
    if (candidates.size() != 1) {
      return violation("element " + I.names[x] + " has " +
                       std::to_string(candidates.size()) +
                       " generalized inverses (expected exactly 1)");
    }
    I.inverse[x] = candidates.front();
  }

  for (std::size_t p = 0; p < n; ++p) {
    if (!I.idempotent[p]) continue;
    for (std::size_t q = 0; q < n; ++q) {
      if (!I.idempotent[q]) continue;
      if (I.mul(p, q) != I.mul(q, p)) {
        return violation("idempotents " + I.names[p] + " and " + I.names[q] +
                         " do not commute");
      }
    }
  }

  if (N.value.size() != n) {
    return violation("scale value count differs from element count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (I.is_zero(i)) continue;
    if (N.value[i] <= 0) {
      return violation("scale of " + I.names[i] + " is not positive");
    }
    if (I.idempotent[i] && N.value[i] != 1) {
      return violation("idempotent " + I.names[i] + " has scale " +
                       format_rational(N.value[i]) + " != 1");
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (I.is_zero(x)) continue;
    for (std::size_t y = 0; y < n; ++y) {
      if (I.is_zero(y)) continue;
      std::size_t xy = I.mul(x, y);
      if (I.is_zero(xy)) continue;
      if (N.value[xy] != N.value[x] * N.value[y]) {
        return violation("scale violation at (" + I.names[x] + "," +
                         I.names[y] + "): N(" + I.names[xy] + ")=" +
                         format_rational(N.value[xy]) + " != " +
                         format_rational(mpq_class(N.value[x] * N.value[y])));
      }
    }
  }

  return report;
}

namespace {

void require_validated(const FiniteInverseSemigroup& I) {
  if (I.inverse.size() != I.size() || I.idempotent.size() != I.size()) {
    fail(ErrorCode::Invalid, "semigroup has not been validated");
  }
}

bool is_upward_hereditary(const FiniteInverseSemigroup& I,
                          const std::vector<std::size_t>& subset) {
  for (std::size_t p : subset) {
    for (std::size_t q : I.nonzero_idempotents()) {
      if (I.leq(p, q) &&
          std::find(subset.begin(), subset.end(), q) == subset.end()) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<std::size_t> ecx(const FiniteInverseSemigroup& I,
                             const FiniteScale& N) {
  require_validated(I);
  std::vector<std::size_t> out;
  for (std::size_t p : I.nonzero_idempotents()) {
    bool ok = true;
    for (std::size_t g = 0; g < I.size() && ok; ++g) {
      if (I.is_zero(g)) continue;
      if (I.mul(I.inv(g), g) == p && N.value[g] < 1) ok = false;
    }
    if (ok) out.push_back(p);
  }
  return out;
}

CrystalResult crystal(const FiniteInverseSemigroup& I, const FiniteScale& N) {
  require_validated(I);
  CrystalResult result;
  result.ecx = ecx(I, N);
  for (std::size_t g = 0; g < I.size(); ++g) {
    if (I.is_zero(g)) continue;
    if (N.value[g] != 1) continue;
    std::size_t domain = I.mul(I.inv(g), g);
    if (std::find(result.ecx.begin(), result.ecx.end(), domain) !=
        result.ecx.end()) {
      result.icx.push_back(g);
    }
  }

  // Crystal elements: adjoined zero first, then the surviving elements.
  result.element_map.push_back(I.has_zero ? 0 : I.size());
  for (std::size_t g : result.icx) result.element_map.push_back(g);

  FiniteInverseSemigroup& c = result.crystal;
  c.has_zero = true;
  c.names.push_back(I.has_zero ? I.names[0] : "0");
  for (std::size_t g : result.icx) c.names.push_back(I.names[g]);

  auto crystal_index = [&](std::size_t original) -> std::size_t {
    for (std::size_t k = 0; k < result.icx.size(); ++k) {
      if (result.icx[k] == original) return k + 1;
    }
    return 0;  // truncated to zero
  };

  const std::size_t m = result.icx.size() + 1;
  c.table.assign(m, std::vector<std::size_t>(m, 0));
  for (std::size_t i = 0; i < result.icx.size(); ++i) {
    for (std::size_t j = 0; j < result.icx.size(); ++j) {
      std::size_t product = I.mul(result.icx[i], result.icx[j]);
      c.table[i + 1][j + 1] = I.is_zero(product) ? 0 : crystal_index(product);
    }
  }

  result.crystal_scale = FiniteScale::trivial(m);
  ValidationReport check = validate(c, result.crystal_scale);
  if (!check.ok) {
    fail(ErrorCode::Invalid,
         "crystal table failed re-validation: " + check.detail);
  }
  return result;
}

std::size_t SemiCharacterSpace::position_of(std::size_t element) const {
  for (std::size_t k = 0; k < idem.size(); ++k) {
    if (idem[k] == element) return k;
  }
  fail(ErrorCode::Invalid, "element is not a nonzero idempotent");
}

bool SemiCharacterSpace::value(std::uint32_t mask, std::size_t element) const {
  for (std::size_t k = 0; k < idem.size(); ++k) {
    if (idem[k] == element) return (mask >> k) & 1u;
  }
  return false;  // zero or non-surviving element
}

std::string SemiCharacterSpace::to_string(const FiniteInverseSemigroup& I,
                                          std::uint32_t mask) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t k = 0; k < idem.size(); ++k) {
    if (!((mask >> k) & 1u)) continue;
    if (!first) out += ",";
    out += I.names[idem[k]];
    first = false;
  }
  return out + "}";
}

SemiCharacterSpace semicharacters(const FiniteInverseSemigroup& I,
                                  std::size_t bound) {
  require_validated(I);
  SemiCharacterSpace space;
  space.idem = I.nonzero_idempotents();
  const std::size_t k = space.idem.size();
  if (k > bound || k > 31) {
    fail(ErrorCode::BoundExceeded,
         "nonzero idempotent count " + std::to_string(k) +
             " exceeds the semicharacter enumeration bound");
  }
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    bool filter = true;
    for (std::size_t a = 0; a < k && filter; ++a) {
      if (!((mask >> a) & 1u)) continue;
      // Closure under products (zero products disqualify the pair).
      for (std::size_t b = 0; b < k && filter; ++b) {
        if (!((mask >> b) & 1u)) continue;
        std::size_t product = I.mul(space.idem[a], space.idem[b]);
        if (I.is_zero(product)) {
          filter = false;
          break;
        }
        std::size_t pos = space.position_of(product);
        if (!((mask >> pos) & 1u)) filter = false;
      }
      // Upward closure.
      for (std::size_t b = 0; b < k && filter; ++b) {
        if (I.leq(space.idem[a], space.idem[b]) && !((mask >> b) & 1u)) {
          filter = false;
        }
      }
    }
    if (filter) space.filters.push_back(mask);
  }
  return space;
}

std::uint32_t principal_character(const FiniteInverseSemigroup& I,
                                  const SemiCharacterSpace& space,
                                  std::size_t p) {
  std::uint32_t mask = 0;
  for (std::size_t k = 0; k < space.idem.size(); ++k) {
    if (I.leq(p, space.idem[k])) mask |= (1u << k);
  }
  if (mask == 0) {
    fail(ErrorCode::Invalid,
         "principal character of " + I.names[p] + " is empty");
  }
  return mask;
}

namespace {

BoundaryReport boundary_impl(const FiniteInverseSemigroup& I,
                             const std::vector<std::size_t>& subset) {
  require_validated(I);
  if (!is_upward_hereditary(I, subset)) {
    fail(ErrorCode::Invalid,
         "surviving idempotent subset is not upward hereditary");
  }
  BoundaryReport report;
  report.omega = semicharacters(I);
  report.ecx_subset = subset;

  std::uint32_t excluded = 0;  // positions outside the subset
  for (std::size_t k = 0; k < report.omega.idem.size(); ++k) {
    if (std::find(subset.begin(), subset.end(), report.omega.idem[k]) ==
        subset.end()) {
      excluded |= (1u << k);
    }
  }

  for (std::uint32_t chi : report.omega.filters) {
    // Complement formula: chi survives unless it lies in some cylinder
    // over an excluded idempotent.
    if ((chi & excluded) == 0) report.via_complement.push_back(chi);
    // Vanishing formula: chi(p) = 0 for every p outside the subset.
    bool vanishes = true;
    for (std::size_t k = 0; k < report.omega.idem.size(); ++k) {
      if (((chi >> k) & 1u) && ((excluded >> k) & 1u)) vanishes = false;
    }
    if (vanishes) report.via_vanishing.push_back(chi);
  }

  if (report.via_complement != report.via_vanishing) {
    fail(ErrorCode::Invalid,
         "boundary formulas disagree (internal invariant violated)");
  }
  report.members = report.via_complement;

  for (std::size_t p : subset) {
    std::uint32_t chi_p = principal_character(I, report.omega, p);
    if (std::find(report.members.begin(), report.members.end(), chi_p) ==
        report.members.end()) {
      fail(ErrorCode::Invalid,
           "principal character of " + I.names[p] +
               " escaped the boundary set (internal invariant violated)");
    }
  }

  report.empty_iff_ecx_empty = report.members.empty() == subset.empty();
  if (!report.empty_iff_ecx_empty) {
    fail(ErrorCode::Invalid,
         "boundary emptiness does not match surviving-set emptiness");
  }
  return report;
}

}  // namespace

BoundaryReport boundary_set(const FiniteInverseSemigroup& I,
                            const FiniteScale& N) {
  return boundary_impl(I, ecx(I, N));
}

BoundaryReport boundary_set_with(const FiniteInverseSemigroup& I,
                                 const std::vector<std::size_t>& ecx_subset) {
  return boundary_impl(I, ecx_subset);
}

std::uint32_t act_on_character(const FiniteInverseSemigroup& I,
                               const SemiCharacterSpace& space, std::size_t g,
                               std::uint32_t chi) {
  std::uint32_t out = 0;
  for (std::size_t k = 0; k < space.idem.size(); ++k) {
    std::size_t conj = I.mul(I.mul(I.inv(g), space.idem[k]), g);
    if (I.is_zero(conj)) continue;
    if (!I.is_idempotent(conj)) {
      fail(ErrorCode::Invalid, "conjugate of an idempotent is not idempotent");
    }
    if (space.value(chi, conj)) out |= (1u << k);
  }
  return out;
}

std::size_t canonical_representative(const FiniteInverseSemigroup& I,
                                     const SemiCharacterSpace& space,
                                     std::size_t g, std::uint32_t chi) {
  for (std::size_t candidate = 0; candidate < I.size(); ++candidate) {
    if (I.is_zero(candidate)) continue;
    if (!space.value(chi, I.mul(I.inv(candidate), candidate))) continue;
    for (std::size_t k = 0; k < space.idem.size(); ++k) {
      if (!((chi >> k) & 1u)) continue;
      std::size_t p = space.idem[k];
      if (I.mul(candidate, p) == I.mul(g, p)) return candidate;
    }
  }
  fail(ErrorCode::Invalid, "no representative found (internal error)");
}

std::size_t Groupoid::arrow_of(std::size_t g, std::uint32_t source) const {
  auto it = index.find({g, source});
  if (it == index.end()) {
    fail(ErrorCode::Invalid, "no such groupoid arrow");
  }
  return it->second;
}

bool Groupoid::is_unit(const FiniteInverseSemigroup& I,
                       std::size_t arrow) const {
  const GroupoidArrow& a = arrows[arrow];
  return I.is_idempotent(a.g) && a.source == a.range;
}

namespace {

void verify_groupoid_axioms(const FiniteInverseSemigroup& I,
                            const Groupoid& G) {
  // Source/range objects are valid; inverse arrows pair up; composition is
  // associative with correct endpoints; units behave neutrally.
  std::set<std::uint32_t> objects(G.omega.filters.begin(),
                                  G.omega.filters.end());
  for (std::size_t i = 0; i < G.arrows.size(); ++i) {
    const GroupoidArrow& a = G.arrows[i];
    if (objects.count(a.source) == 0 || objects.count(a.range) == 0) {
      fail(ErrorCode::Invalid, "arrow endpoint is not a semicharacter");
    }
    std::size_t j = inverse_arrow(I, G, i);
    if (G.arrows[j].source != a.range || G.arrows[j].range != a.source) {
      fail(ErrorCode::Invalid, "inverse arrow endpoints are wrong");
    }
    if (inverse_arrow(I, G, j) != i) {
      fail(ErrorCode::Invalid, "inverse is not involutive");
    }
    // a^{-1} a is the unit at the source; a a^{-1} the unit at the range.
    std::size_t left_unit = compose_arrows(I, G, j, i);
    if (!G.is_unit(I, left_unit) ||
        G.arrows[left_unit].source != a.source) {
      fail(ErrorCode::Invalid, "inverse composite is not the source unit");
    }
    std::size_t right_unit = compose_arrows(I, G, i, j);
    if (!G.is_unit(I, right_unit) ||
        G.arrows[right_unit].source != a.range) {
      fail(ErrorCode::Invalid, "inverse composite is not the range unit");
    }
  }
  for (std::size_t i = 0; i < G.arrows.size(); ++i) {
    for (std::size_t j = 0; j < G.arrows.size(); ++j) {
      if (G.arrows[i].source != G.arrows[j].range) continue;
      std::size_t ij = compose_arrows(I, G, i, j);
      if (G.arrows[ij].source != G.arrows[j].source ||
          G.arrows[ij].range != G.arrows[i].range) {
        fail(ErrorCode::Invalid, "composite endpoints are wrong");
      }
      for (std::size_t k = 0; k < G.arrows.size(); ++k) {
        if (G.arrows[j].source != G.arrows[k].range) continue;
        std::size_t left = compose_arrows(I, G, ij, k);
        std::size_t right = compose_arrows(I, G, i, compose_arrows(I, G, j, k));
        if (left != right) {
          fail(ErrorCode::Invalid, "groupoid composition is not associative");
        }
      }
    }
  }
}

}  // namespace

Groupoid paterson(const FiniteInverseSemigroup& I, std::size_t bound) {
  require_validated(I);
  Groupoid G;
  G.omega = semicharacters(I, bound);
  for (std::uint32_t chi : G.omega.filters) {
    std::set<std::size_t> reps;
    for (std::size_t g = 0; g < I.size(); ++g) {
      if (I.is_zero(g)) continue;
      if (!G.omega.value(chi, I.mul(I.inv(g), g))) continue;
      reps.insert(canonical_representative(I, G.omega, g, chi));
    }
    for (std::size_t g : reps) {
      GroupoidArrow arrow;
      arrow.g = g;
      arrow.source = chi;
      arrow.range = act_on_character(I, G.omega, g, chi);
      G.arrows.push_back(arrow);
    }
  }
  std::sort(G.arrows.begin(), G.arrows.end(),
            [](const GroupoidArrow& a, const GroupoidArrow& b) {
              if (a.source != b.source) return a.source < b.source;
              return a.g < b.g;
            });
  for (std::size_t i = 0; i < G.arrows.size(); ++i) {
    G.index[{G.arrows[i].g, G.arrows[i].source}] = i;
  }
  verify_groupoid_axioms(I, G);
  return G;
}

std::size_t compose_arrows(const FiniteInverseSemigroup& I, const Groupoid& G,
                           std::size_t left, std::size_t right) {
  const GroupoidArrow& a = G.arrows[left];
  const GroupoidArrow& b = G.arrows[right];
  if (a.source != b.range) {
    fail(ErrorCode::Invalid, "arrows are not composable");
  }
  std::size_t product = I.mul(a.g, b.g);
  if (I.is_zero(product) ||
      !G.omega.value(b.source, I.mul(I.inv(product), product))) {
    fail(ErrorCode::Invalid, "composite germ is not defined (internal error)");
  }
  std::size_t rep = canonical_representative(I, G.omega, product, b.source);
  return G.arrow_of(rep, b.source);
}

std::size_t inverse_arrow(const FiniteInverseSemigroup& I, const Groupoid& G,
                          std::size_t arrow) {
  const GroupoidArrow& a = G.arrows[arrow];
  std::size_t rep = canonical_representative(I, G.omega, I.inv(a.g), a.range);
  return G.arrow_of(rep, a.range);
}

RestrictionCertificate restriction_iso_certificate(
    const FiniteInverseSemigroup& I, const FiniteScale& N) {
  require_validated(I);
  RestrictionCertificate cert;

  CrystalResult c = crystal(I, N);
  BoundaryReport boundary = boundary_impl(I, c.ecx);
  Groupoid big = paterson(I);
  Groupoid small = paterson(c.crystal);

  std::set<std::uint32_t> z(boundary.members.begin(), boundary.members.end());
  cert.boundary_objects = z.size();

  // Arrows of the restriction: both endpoints in the boundary set.
  std::vector<std::size_t> restricted;
  for (std::size_t i = 0; i < big.arrows.size(); ++i) {
    if (z.count(big.arrows[i].source) && z.count(big.arrows[i].range)) {
      restricted.push_back(i);
    }
  }
  cert.restricted_arrows = restricted.size();
  cert.crystal_arrows = small.arrows.size();

  // Object correspondence: extend a crystal semicharacter by zero.
  auto extend_mask = [&](std::uint32_t chi_c) {
    std::uint32_t out = 0;
    for (std::size_t k = 0; k < small.omega.idem.size(); ++k) {
      if (!((chi_c >> k) & 1u)) continue;
      std::size_t original = c.element_map[small.omega.idem[k]];
      out |= (1u << big.omega.position_of(original));
    }
    return out;
  };

  std::set<std::uint32_t> extended_objects;
  for (std::uint32_t chi_c : small.omega.filters) {
    extended_objects.insert(extend_mask(chi_c));
  }
  if (extended_objects != z) {
    cert.pass = false;
    cert.detail = "extended crystal semicharacters do not equal the boundary set";
    return cert;
  }

  // Arrow correspondence.
  std::vector<std::size_t> image(small.arrows.size());
  std::set<std::size_t> image_set;
  for (std::size_t i = 0; i < small.arrows.size(); ++i) {
    const GroupoidArrow& a = small.arrows[i];
    std::uint32_t chi = extend_mask(a.source);
    std::size_t g = c.element_map[a.g];
    if (!big.omega.value(chi, I.mul(I.inv(g), g))) {
      cert.pass = false;
      cert.detail = "image germ of " + I.names[g] + " is undefined";
      return cert;
    }
    std::size_t rep = canonical_representative(I, big.omega, g, chi);
    std::size_t arrow = big.arrow_of(rep, chi);
    if (!z.count(big.arrows[arrow].source) ||
        !z.count(big.arrows[arrow].range)) {
      cert.pass = false;
      cert.detail = "image arrow of " + I.names[g] + " leaves the restriction";
      return cert;
    }
    image[i] = arrow;
    image_set.insert(arrow);
  }
  if (image_set.size() != small.arrows.size() ||
      image_set.size() != restricted.size()) {
    cert.pass = false;
    cert.detail = "arrow map is not a bijection (" +
                  std::to_string(small.arrows.size()) + " crystal arrows, " +
                  std::to_string(restricted.size()) + " restricted arrows, " +
                  std::to_string(image_set.size()) + " images)";
    return cert;
  }

  // Composition preservation on every composable pair.
  for (std::size_t i = 0; i < small.arrows.size(); ++i) {
    for (std::size_t j = 0; j < small.arrows.size(); ++j) {
      if (small.arrows[i].source != small.arrows[j].range) continue;
      ++cert.composable_pairs_checked;
      std::size_t composed = compose_arrows(c.crystal, small, i, j);
      std::size_t mapped = compose_arrows(I, big, image[i], image[j]);
      if (image[composed] != mapped) {
        cert.pass = false;
        cert.detail = "composition is not preserved at pair (" +
                      c.crystal.names[small.arrows[i].g] + "," +
                      c.crystal.names[small.arrows[j].g] + ")";
        return cert;
      }
    }
  }

  cert.detail = "boundary objects: " + std::to_string(cert.boundary_objects) +
                ", arrows: " + std::to_string(cert.restricted_arrows);
  return cert;
}

namespace {

TransversalityReport transversality_impl(
    const FiniteInverseSemigroup& I, const std::vector<std::size_t>& subset) {
  require_validated(I);
  TransversalityReport report;
  for (std::size_t p : I.nonzero_idempotents()) {
    TransversalityItem item;
    item.p = p;
    for (std::size_t g = 0; g < I.size(); ++g) {
      if (I.is_zero(g)) continue;
      if (I.mul(I.inv(g), g) != p) continue;
      std::size_t range = I.mul(g, I.inv(g));
      if (std::find(subset.begin(), subset.end(), range) != subset.end()) {
        item.witness = g;
        break;
      }
    }
    if (!item.witness.has_value()) {
      report.pass = false;
      if (!report.detail.empty()) report.detail += "; ";
      report.detail += "no element connects " + I.names[p] +
                       " to a surviving idempotent";
    }
    report.items.push_back(item);
  }
  if (report.pass) {
    report.detail = "all " + std::to_string(report.items.size()) +
                    " idempotents connect to surviving idempotents";
  }
  return report;
}

}  // namespace

TransversalityReport transversality_check(const FiniteInverseSemigroup& I,
                                          const FiniteScale& N) {
  return transversality_impl(I, ecx(I, N));
}

TransversalityReport transversality_check_with(
    const FiniteInverseSemigroup& I,
    const std::vector<std::size_t>& ecx_subset) {
  return transversality_impl(I, ecx_subset);
}

}  // namespace crystalkit
