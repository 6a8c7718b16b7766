#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crystalkit {

// Finite inverse semigroup given by a Cayley table. Index 0 is the zero
// element when has_zero is set. The derived fields (inverse map, idempotent
// flags) are filled by a successful validate() and are required by every
// other operation in this module.
struct FiniteInverseSemigroup {
  std::vector<std::string> names;
  bool has_zero = false;
  std::vector<std::vector<std::size_t>> table;

  // Derived by validate().
  std::vector<std::size_t> inverse;
  std::vector<bool> idempotent;

  std::size_t size() const { return names.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse[a]; }
  bool is_zero(std::size_t a) const { return has_zero && a == 0; }
  bool is_idempotent(std::size_t a) const { return idempotent[a]; }
  // Natural partial order on idempotents: p <= q iff p = pq (= qp).
  bool leq(std::size_t p, std::size_t q) const { return mul(p, q) == p; }
  std::vector<std::size_t> nonzero_idempotents() const;
  std::size_t index_of(const std::string& name) const;
};

// Scale values aligned with the element list; the zero entry is ignored.
struct FiniteScale {
  std::vector<mpq_class> value;

  static FiniteScale trivial(std::size_t n) {
    return FiniteScale{std::vector<mpq_class>(n, 1)};
  }
};

struct ValidationReport {
  bool ok = true;
  std::string detail;  // witness description for the first violation
};

// Exhaustively checks the inverse-semigroup axioms (zero absorbing,
// associativity, unique inverses, commuting idempotents) and the scale laws
// (positivity, value one on idempotents, multiplicativity on nonzero
// products). Fills the derived fields of `I` as far as the checks succeed.
ValidationReport validate(FiniteInverseSemigroup& I, const FiniteScale& N);

// Nonzero idempotents p such that every g with g^{-1}g = p has N(g) >= 1.
std::vector<std::size_t> ecx(const FiniteInverseSemigroup& I,
                             const FiniteScale& N);

struct CrystalResult {
  std::vector<std::size_t> ecx;  // surviving idempotents (original indices)
  std::vector<std::size_t> icx;  // scale-one elements over them (original indices)
  FiniteInverseSemigroup crystal;  // I_c with adjoined zero, truncated product
  FiniteScale crystal_scale;       // identically one
  std::vector<std::size_t> element_map;  // crystal index -> original index
};

// The crystal semigroup: elements of scale one whose domain idempotent
// survives, product truncated to that set, zero adjoined. The result is
// re-validated; a failure there is an internal error.
CrystalResult crystal(const FiniteInverseSemigroup& I, const FiniteScale& N);

// The space of semicharacters of E: filters on the nonzero idempotents
// (nonempty, closed under products, upward closed, avoiding zero), encoded as
// bitmasks over `idem` (ascending element order).
struct SemiCharacterSpace {
  std::vector<std::size_t> idem;       // E^x element indices, ascending
  std::vector<std::uint32_t> filters;  // all filters, ascending mask order

  std::size_t position_of(std::size_t element) const;
  bool value(std::uint32_t mask, std::size_t element) const;
  std::string to_string(const FiniteInverseSemigroup& I,
                        std::uint32_t mask) const;
};

inline constexpr std::size_t kSemiCharacterBound = 24;

SemiCharacterSpace semicharacters(const FiniteInverseSemigroup& I,
                                  std::size_t bound = kSemiCharacterBound);

// chi_p: the principal filter {q : p <= q}.
std::uint32_t principal_character(const FiniteInverseSemigroup& I,
                                  const SemiCharacterSpace& space,
                                  std::size_t p);

struct BoundaryReport {
  SemiCharacterSpace omega;
  std::vector<std::size_t> ecx_subset;        // the subset used
  std::vector<std::uint32_t> via_complement;  // Omega minus the excluded cylinders
  std::vector<std::uint32_t> via_vanishing;   // characters vanishing off the subset
  std::vector<std::uint32_t> members;         // the agreed boundary set
  bool empty_iff_ecx_empty = false;           // Z empty exactly when subset empty
};

// Boundary set computed two independent ways; the two must agree and every
// principal character of a surviving idempotent must belong.
BoundaryReport boundary_set(const FiniteInverseSemigroup& I,
                            const FiniteScale& N);
// Same computation against an explicit upward-hereditary subset, for
// counterfactual scenarios.
BoundaryReport boundary_set_with(const FiniteInverseSemigroup& I,
                                 const std::vector<std::size_t>& ecx_subset);

struct GroupoidArrow {
  std::size_t g = 0;         // least element index representing the class
  std::uint32_t source = 0;  // semicharacter mask
  std::uint32_t range = 0;   // mask of g.chi
};

struct Groupoid {
  SemiCharacterSpace omega;
  std::vector<GroupoidArrow> arrows;  // sorted by (source, g)
  // Arrow index by (canonical representative, source mask).
  std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> index;

  std::size_t arrow_of(std::size_t g, std::uint32_t source) const;
  bool is_unit(const FiniteInverseSemigroup& I, std::size_t arrow) const;
};

// The discrete groupoid of germs [g, chi] with chi(g^{-1}g)=1, identified
// when some p with chi(p)=1 has g1 p = g2 p. Verifies the groupoid axioms
// exhaustively before returning.
Groupoid paterson(const FiniteInverseSemigroup& I,
                  std::size_t bound = kSemiCharacterBound);

// Class of (g, chi): the least equivalent element paired with chi.
std::size_t canonical_representative(const FiniteInverseSemigroup& I,
                                     const SemiCharacterSpace& space,
                                     std::size_t g, std::uint32_t chi);

// g.chi, the range character of [g, chi]: q maps to chi(g^{-1} q g).
std::uint32_t act_on_character(const FiniteInverseSemigroup& I,
                               const SemiCharacterSpace& space, std::size_t g,
                               std::uint32_t chi);

// Composition [g,chi][h,psi] = [gh,psi], defined when chi equals the range
// of [h,psi]. Returns the arrow index in G.
std::size_t compose_arrows(const FiniteInverseSemigroup& I, const Groupoid& G,
                           std::size_t left, std::size_t right);
std::size_t inverse_arrow(const FiniteInverseSemigroup& I, const Groupoid& G,
                          std::size_t arrow);

struct RestrictionCertificate {
  bool pass = true;
  std::string detail;
  std::size_t boundary_objects = 0;
  std::size_t restricted_arrows = 0;
  std::size_t crystal_arrows = 0;
  std::size_t composable_pairs_checked = 0;
};

// Certifies the canonical isomorphism between the boundary restriction of
// the groupoid of I and the groupoid of the crystal of I: extends crystal
// semicharacters by zero, maps germ classes to germ classes, and checks the
// map is well-defined, bijective, and composition-preserving.
RestrictionCertificate restriction_iso_certificate(
    const FiniteInverseSemigroup& I, const FiniteScale& N);

struct TransversalityItem {
  std::size_t p = 0;                  // idempotent under test
  std::optional<std::size_t> witness; // g with g^{-1}g = p, gg^{-1} surviving
};

struct TransversalityReport {
  bool pass = true;
  std::vector<TransversalityItem> items;
  std::string detail;
};

// Condition: every nonzero idempotent is equivalent to a surviving one,
// witnessed by g with g^{-1}g = p and gg^{-1} in the surviving set.
TransversalityReport transversality_check(const FiniteInverseSemigroup& I,
                                          const FiniteScale& N);
TransversalityReport transversality_check_with(
    const FiniteInverseSemigroup& I, const std::vector<std::size_t>& ecx_subset);

}  // namespace crystalkit
