#include <doctest.h>

#include <algorithm>
#include <set>

#include "crystalkit/catalog.hpp"
#include "crystalkit/error.hpp"
#include "crystalkit/finite.hpp"

using namespace crystalkit;

namespace {

std::vector<std::string> names_of(const FiniteInverseSemigroup& I,
                                  const std::vector<std::size_t>& indices) {
  std::vector<std::string> out;
  for (std::size_t i : indices) out.push_back(I.names[i]);
  return out;
}

FiniteInverseSemigroup diamond4() {
  // 1 above incomparable p, q above their meet m; no zero.
  FiniteInverseSemigroup s;
  s.names = {"1", "p", "q", "m"};
  s.has_zero = false;
  s.table = {{0, 1, 2, 3}, {1, 1, 3, 3}, {2, 3, 2, 3}, {3, 3, 3, 3}};
  return s;
}

FiniteInverseSemigroup chain4() {
  FiniteInverseSemigroup s;
  s.names = {"1", "p1", "p2", "p3"};
  s.has_zero = false;
  s.table.assign(4, std::vector<std::size_t>(4, 0));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) s.table[i][j] = std::max(i, j);
  }
  return s;
}

}  // namespace

TEST_CASE("catalog semigroups validate and a corrupted scale is witnessed") {
  for (const CatalogEntry& entry : builtin_catalog()) {
    FiniteInverseSemigroup copy = entry.semigroup;
    ValidationReport report = validate(copy, entry.scale);
    INFO(entry.name);
    CHECK(report.ok);
  }
  CHECK(builtin_catalog().size() == 8);

  // Breaking multiplicativity of the scale names the offending pair.
  CatalogEntry bad = catalog_entry("b2_lambda2");
  bad.scale.value[4] = 1;  // N(e21) should be 1/2
  ValidationReport report = validate(bad.semigroup, bad.scale);
  CHECK_FALSE(report.ok);
  CHECK(report.detail == "scale violation at (e12,e21): N(e11)=1/1 != 2/1");

  // Breaking the table is caught by the associativity sweep.
  CatalogEntry assoc = catalog_entry("b2_lambda2");
  assoc.semigroup.table[3][4] = 2;  // e12*e21 forced to e22
  ValidationReport report2 = validate(assoc.semigroup, assoc.scale);
  CHECK_FALSE(report2.ok);
  CHECK(report2.detail.find("associativity fails") == 0);

  // A left-zero band has no unique generalized inverses.
  FiniteInverseSemigroup band;
  band.names = {"a", "b"};
  band.has_zero = false;
  band.table = {{0, 0}, {1, 1}};
  FiniteScale ones = FiniteScale::trivial(2);
  ValidationReport report3 = validate(band, ones);
  CHECK_FALSE(report3.ok);
  CHECK(report3.detail.find("generalized inverses") != std::string::npos);

  // Idempotents must carry scale one.
  CatalogEntry idem = catalog_entry("chain2");
  idem.scale.value[1] = 2;
  ValidationReport report4 = validate(idem.semigroup, idem.scale);
  CHECK_FALSE(report4.ok);
  CHECK(report4.detail.find("has scale") != std::string::npos);
}

TEST_CASE("surviving idempotents depend on the scale direction") {
  CatalogEntry two = catalog_entry("b2_lambda2");
  CHECK(names_of(two.semigroup, ecx(two.semigroup, two.scale)) ==
        std::vector<std::string>{"e22"});

  CatalogEntry half = catalog_entry("b2_half");
  CHECK(names_of(half.semigroup, ecx(half.semigroup, half.scale)) ==
        std::vector<std::string>{"e11"});

  CatalogEntry three = catalog_entry("b2_lambda3");
  CHECK(names_of(three.semigroup, ecx(three.semigroup, three.scale)) ==
        std::vector<std::string>{"e22"});

  // Any trivial scale keeps every nonzero idempotent.
  for (const char* name : {"b2_trivial", "chain2", "chain3", "vee3", "sym2"}) {
    CatalogEntry entry = catalog_entry(name);
    CHECK(ecx(entry.semigroup, entry.scale) ==
          entry.semigroup.nonzero_idempotents());
  }

  // The surviving set is upward hereditary in the natural order.
  for (const CatalogEntry& entry : builtin_catalog()) {
    auto survivors = ecx(entry.semigroup, entry.scale);
    for (std::size_t p : survivors) {
      for (std::size_t q : entry.semigroup.nonzero_idempotents()) {
        if (entry.semigroup.leq(p, q)) {
          CHECK(std::find(survivors.begin(), survivors.end(), q) !=
                survivors.end());
        }
      }
    }
  }
}

TEST_CASE("the crystal truncates to scale-one elements over survivors") {
  SUBCASE("matrix units with scale two collapse to a point") {
    CatalogEntry entry = catalog_entry("b2_lambda2");
    CrystalResult c = crystal(entry.semigroup, entry.scale);
    CHECK(names_of(entry.semigroup, c.icx) == std::vector<std::string>{"e22"});
    CHECK(c.crystal.names == std::vector<std::string>{"0", "e22"});
    CHECK(c.crystal.table ==
          std::vector<std::vector<std::size_t>>{{0, 0}, {0, 1}});
  }

  SUBCASE("trivial scales reproduce the semigroup with zero adjoined") {
    CatalogEntry entry = catalog_entry("b2_trivial");
    CrystalResult c = crystal(entry.semigroup, entry.scale);
    CHECK(c.crystal.names == entry.semigroup.names);
    CHECK(c.crystal.table == entry.semigroup.table);

    CatalogEntry chain = catalog_entry("chain2");
    CrystalResult cc = crystal(chain.semigroup, chain.scale);
    CHECK(cc.crystal.names == std::vector<std::string>{"0", "1", "p1"});
    CHECK(cc.crystal.table == std::vector<std::vector<std::size_t>>{
                                  {0, 0, 0}, {0, 1, 2}, {0, 2, 2}});
  }

  SUBCASE("crystal tables re-validate and ranges survive too") {
    for (const CatalogEntry& entry : builtin_catalog()) {
      CrystalResult c = crystal(entry.semigroup, entry.scale);
      FiniteInverseSemigroup copy = c.crystal;
      ValidationReport report = validate(copy, c.crystal_scale);
      INFO(entry.name);
      CHECK(report.ok);
      for (std::size_t g : c.icx) {
        std::size_t range =
            entry.semigroup.mul(g, entry.semigroup.inv(g));
        CHECK(std::find(c.ecx.begin(), c.ecx.end(), range) != c.ecx.end());
      }
    }
  }
}

TEST_CASE("semicharacters are exactly the filters and all are principal") {
  CatalogEntry b2 = catalog_entry("b2_lambda2");
  SemiCharacterSpace space = semicharacters(b2.semigroup);
  REQUIRE(space.idem.size() == 2);
  CHECK(space.filters == std::vector<std::uint32_t>{1, 2});  // {e11}, {e22}
  CHECK(principal_character(b2.semigroup, space,
                            b2.semigroup.index_of("e22")) == 2);

  CatalogEntry chain = catalog_entry("chain2");
  SemiCharacterSpace cs = semicharacters(chain.semigroup);
  CHECK(cs.filters.size() == 2);  // {1}, {1,p1}

  FiniteInverseSemigroup single;
  single.names = {"e"};
  single.has_zero = false;
  single.table = {{0}};
  FiniteScale ones = FiniteScale::trivial(1);
  REQUIRE(validate(single, ones).ok);
  CHECK(semicharacters(single).filters.size() == 1);

  CatalogEntry sym = catalog_entry("sym2");
  SemiCharacterSpace ss = semicharacters(sym.semigroup);
  CHECK(ss.filters.size() == 3);

  // Every filter of a finite semilattice is principal: it is the up-set of
  // the product of its members.
  std::vector<FiniteInverseSemigroup> extra = {diamond4(), chain4()};
  for (auto& s : extra) {
    FiniteScale triv = FiniteScale::trivial(s.size());
    REQUIRE(validate(s, triv).ok);
  }
  for (const CatalogEntry& entry : builtin_catalog()) {
    extra.push_back(entry.semigroup);
  }
  for (const FiniteInverseSemigroup& s : extra) {
    SemiCharacterSpace sp = semicharacters(s);
    for (std::uint32_t mask : sp.filters) {
      std::size_t product = 0;
      bool started = false;
      for (std::size_t k = 0; k < sp.idem.size(); ++k) {
        if (!((mask >> k) & 1u)) continue;
        product = started ? s.mul(product, sp.idem[k]) : sp.idem[k];
        started = true;
      }
      REQUIRE(started);
      CHECK(principal_character(s, sp, product) == mask);
    }
  }
}

TEST_CASE("boundary sets computed two ways agree across the catalog") {
  CatalogEntry b2 = catalog_entry("b2_lambda2");
  BoundaryReport z = boundary_set(b2.semigroup, b2.scale);
  SemiCharacterSpace space = semicharacters(b2.semigroup);
  CHECK(z.members == std::vector<std::uint32_t>{principal_character(
                         b2.semigroup, space, b2.semigroup.index_of("e22"))});
  CHECK(z.empty_iff_ecx_empty);

  for (const CatalogEntry& entry : builtin_catalog()) {
    BoundaryReport report = boundary_set(entry.semigroup, entry.scale);
    INFO(entry.name);
    CHECK(report.via_complement == report.via_vanishing);
    CHECK(report.empty_iff_ecx_empty);
    bool trivial = true;
    for (std::size_t i = 0; i < entry.semigroup.size(); ++i) {
      if (!entry.semigroup.is_zero(i) && entry.scale.value[i] != 1) {
        trivial = false;
      }
    }
    if (trivial) {
      CHECK(report.members == report.omega.filters);  // all of Omega
    }
  }

  // Extra semilattices up to four idempotents.
  for (FiniteInverseSemigroup s : {diamond4(), chain4()}) {
    FiniteScale triv = FiniteScale::trivial(s.size());
    REQUIRE(validate(s, triv).ok);
    BoundaryReport report = boundary_set(s, triv);
    CHECK(report.via_complement == report.via_vanishing);
    CHECK(report.members == report.omega.filters);
  }

  SUBCASE("manufactured empty survivor set forces an empty boundary") {
    BoundaryReport empty = boundary_set_with(b2.semigroup, {});
    CHECK(empty.members.empty());
    CHECK(empty.empty_iff_ecx_empty);
  }

  SUBCASE("manufactured one-sided survivor set on the vee") {
    CatalogEntry vee = catalog_entry("vee3");
    std::size_t q = vee.semigroup.index_of("q");
    BoundaryReport report = boundary_set_with(vee.semigroup, {q});
    SemiCharacterSpace vs = semicharacters(vee.semigroup);
    CHECK(report.members == std::vector<std::uint32_t>{principal_character(
                                vee.semigroup, vs, q)});
  }

  SUBCASE("non-hereditary subsets are rejected") {
    CatalogEntry chain = catalog_entry("chain2");
    std::size_t p1 = chain.semigroup.index_of("p1");
    CHECK_THROWS_AS((void)boundary_set_with(chain.semigroup, {p1}), Error);
  }
}

TEST_CASE("germ groupoids have the documented shapes") {
  SUBCASE("matrix units give the pair groupoid on two objects") {
    CatalogEntry entry = catalog_entry("b2_trivial");
    Groupoid g = paterson(entry.semigroup);
    CHECK(g.omega.filters.size() == 2);
    CHECK(g.arrows.size() == 4);
    std::size_t units = 0, crossings = 0;
    for (std::size_t i = 0; i < g.arrows.size(); ++i) {
      if (g.is_unit(entry.semigroup, i)) {
        ++units;
      } else {
        CHECK(g.arrows[i].source != g.arrows[i].range);
        ++crossings;
      }
    }
    CHECK(units == 2);
    CHECK(crossings == 2);
  }

  SUBCASE("semilattices give unit groupoids") {
    for (const char* name : {"chain2", "chain3", "vee3"}) {
      CatalogEntry entry = catalog_entry(name);
      Groupoid g = paterson(entry.semigroup);
      INFO(name);
      CHECK(g.arrows.size() == g.omega.filters.size());
      for (std::size_t i = 0; i < g.arrows.size(); ++i) {
        CHECK(g.is_unit(entry.semigroup, i));
      }
    }
  }

  SUBCASE("a single nonzero element gives a single unit") {
    FiniteInverseSemigroup s;
    s.names = {"0", "e"};
    s.has_zero = true;
    s.table = {{0, 0}, {0, 1}};
    FiniteScale ones = FiniteScale::trivial(2);
    REQUIRE(validate(s, ones).ok);
    Groupoid g = paterson(s);
    CHECK(g.arrows.size() == 1);
    CHECK(g.is_unit(s, 0));
  }

  SUBCASE("partial injections carry an isotropy loop at the full character") {
    CatalogEntry entry = catalog_entry("sym2");
    Groupoid g = paterson(entry.semigroup);
    CHECK(g.omega.filters.size() == 3);
    CHECK(g.arrows.size() == 6);
    // The filter containing only the full identity has a nontrivial loop.
    SemiCharacterSpace space = g.omega;
    std::uint32_t full_only =
        1u << space.position_of(entry.semigroup.index_of("1"));
    std::size_t loops = 0;
    for (std::size_t i = 0; i < g.arrows.size(); ++i) {
      if (g.arrows[i].source == full_only && g.arrows[i].range == full_only) {
        ++loops;
      }
    }
    CHECK(loops == 2);  // unit and the swap germ
  }
}

TEST_CASE("boundary restriction matches the crystal groupoid") {
  CatalogEntry b2 = catalog_entry("b2_lambda2");
  RestrictionCertificate cert =
      restriction_iso_certificate(b2.semigroup, b2.scale);
  CHECK(cert.pass);
  CHECK(cert.boundary_objects == 1);
  CHECK(cert.restricted_arrows == 1);
  CHECK(cert.crystal_arrows == 1);

  for (const CatalogEntry& entry : builtin_catalog()) {
    RestrictionCertificate report =
        restriction_iso_certificate(entry.semigroup, entry.scale);
    INFO(entry.name << ": " << report.detail);
    CHECK(report.pass);
    CHECK(report.restricted_arrows == report.crystal_arrows);
  }
}

TEST_CASE("transversality witnesses connect idempotents to survivors") {
  CatalogEntry b2 = catalog_entry("b2_lambda2");
  TransversalityReport report = transversality_check(b2.semigroup, b2.scale);
  CHECK(report.pass);
  REQUIRE(report.items.size() == 2);
  CHECK(b2.semigroup.names[report.items[0].p] == "e11");
  REQUIRE(report.items[0].witness.has_value());
  CHECK(b2.semigroup.names[*report.items[0].witness] == "e21");
  REQUIRE(report.items[1].witness.has_value());
  CHECK(b2.semigroup.names[*report.items[1].witness] == "e22");

  // Semilattices with every idempotent surviving are transversal via g = p.
  for (const char* name : {"chain2", "chain3", "vee3", "sym2"}) {
    CatalogEntry entry = catalog_entry(name);
    TransversalityReport r = transversality_check(entry.semigroup, entry.scale);
    CHECK(r.pass);
    for (const TransversalityItem& item : r.items) {
      REQUIRE(item.witness.has_value());
    }
  }

  // Two incomparable idempotents with zero product and no connecting
  // element: declaring only q surviving strands p.
  CatalogEntry vee = catalog_entry("vee3");
  TransversalityReport stranded = transversality_check_with(
      vee.semigroup, {vee.semigroup.index_of("q")});
  CHECK_FALSE(stranded.pass);
  REQUIRE(stranded.items.size() == 2);
  CHECK(vee.semigroup.names[stranded.items[0].p] == "p");
  CHECK_FALSE(stranded.items[0].witness.has_value());
  CHECK(stranded.items[1].witness.has_value());
  CHECK(stranded.detail.find("no element connects p") != std::string::npos);
}
