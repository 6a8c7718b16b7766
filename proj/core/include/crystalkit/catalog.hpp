#pragma once

#include <string>
#include <vector>

#include "crystalkit/finite.hpp"

namespace crystalkit {

struct CatalogEntry {
  std::string name;
  std::string description;
  FiniteInverseSemigroup semigroup;  // validated
  FiniteScale scale;
};

// Built-in finite scaled inverse semigroups:
//   b2_lambda2, b2_half, b2_lambda3, b2_trivial — the 5-element combinatorial
//     bicyclic-free semigroup of 2x2 matrix units with zero, scale lambda on
//     the off-diagonal pair;
//   chain2, chain3 — semilattice chains with the trivial scale;
//   vee3 — two incomparable idempotents joined by zero, trivial scale;
//   sym2 — all partial injections of a two-letter set, trivial scale.
std::vector<CatalogEntry> builtin_catalog();

// Lookup by name; unknown names are an error.
CatalogEntry catalog_entry(const std::string& name);

std::vector<std::string> catalog_names();

}  // namespace crystalkit
