#include "crystalkit/catalog.hpp"

#include <array>

#include "crystalkit/error.hpp"

namespace crystalkit {

namespace {

CatalogEntry finish(CatalogEntry entry) {
  ValidationReport report = validate(entry.semigroup, entry.scale);
  if (!report.ok) {
    fail(ErrorCode::Invalid,
         "catalog entry " + entry.name + " is invalid: " + report.detail);
  }
  return entry;
}

// 2x2 matrix units with zero: elements 0, e11, e22, e12, e21 and the product
// e_{ab} e_{cd} = e_{ad} when b = c, zero otherwise. The scale fixes
// N(e12) = lambda, N(e21) = 1/lambda.
CatalogEntry matrix_units(const std::string& name, const mpq_class& lambda) {
  CatalogEntry entry;
  entry.name = name;
  entry.description = "2x2 matrix units with zero, off-diagonal scale " +
                      lambda.get_str();
  FiniteInverseSemigroup& s = entry.semigroup;
  s.names = {"0", "e11", "e22", "e12", "e21"};
  s.has_zero = true;
  // Row/column index pairs for each nonzero element.
  const std::array<std::pair<int, int>, 5> units = {
      std::pair<int, int>{-1, -1}, {1, 1}, {2, 2}, {1, 2}, {2, 1}};
  auto find_unit = [&](int a, int b) -> std::size_t {
    for (std::size_t k = 1; k < units.size(); ++k) {
      if (units[k].first == a && units[k].second == b) return k;
    }
    fail(ErrorCode::Invalid, "matrix unit table construction failed");
  };
  s.table.assign(5, std::vector<std::size_t>(5, 0));
  for (std::size_t i = 1; i < 5; ++i) {
    for (std::size_t j = 1; j < 5; ++j) {
      if (units[i].second == units[j].first) {
        s.table[i][j] = find_unit(units[i].first, units[j].second);
      }
    }
  }
  entry.scale.value.assign(5, 1);
  entry.scale.value[3] = lambda;
  entry.scale.value[4] = mpq_class(1) / lambda;
  return finish(std::move(entry));
}

CatalogEntry chain(const std::string& name, std::size_t length) {
  CatalogEntry entry;
  entry.name = name;
  entry.description =
      "semilattice chain of " + std::to_string(length) + " idempotents";
  FiniteInverseSemigroup& s = entry.semigroup;
  s.has_zero = false;
  s.names.push_back("1");
  for (std::size_t i = 1; i < length; ++i) {
    s.names.push_back("p" + std::to_string(i));
  }
  // Product of chain elements is the lower one (larger index).
  s.table.assign(length, std::vector<std::size_t>(length, 0));
  for (std::size_t i = 0; i < length; ++i) {
    for (std::size_t j = 0; j < length; ++j) {
      s.table[i][j] = std::max(i, j);
    }
  }
  entry.scale = FiniteScale::trivial(length);
  return finish(std::move(entry));
}

CatalogEntry vee() {
  CatalogEntry entry;
  entry.name = "vee3";
  entry.description = "two incomparable idempotents with zero product";
  FiniteInverseSemigroup& s = entry.semigroup;
  s.has_zero = true;
  s.names = {"0", "p", "q"};
  s.table = {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}};
  entry.scale = FiniteScale::trivial(3);
  return finish(std::move(entry));
}

// All partial injections of a two-letter set; mul(x, y) applies y first.
CatalogEntry symmetric2() {
  CatalogEntry entry;
  entry.name = "sym2";
  entry.description = "partial injections of a two-letter set";
  FiniteInverseSemigroup& s = entry.semigroup;
  s.has_zero = true;
  // Maps are arrays m with m[i] = image of letter i, -1 when undefined.
  const std::vector<std::array<int, 2>> maps = {
      {-1, -1},  // 0: empty map (zero)
      {0, -1},   // p1: identity on the first letter
      {-1, 1},   // p2: identity on the second letter
      {0, 1},    // 1: identity
      {1, 0},    // s: swap
      {1, -1},   // a: first letter to second
      {-1, 0},   // b: second letter to first
  };
  s.names = {"0", "p1", "p2", "1", "s", "a", "b"};
  auto compose = [&](const std::array<int, 2>& x, const std::array<int, 2>& y) {
    std::array<int, 2> out = {-1, -1};
    for (int i = 0; i < 2; ++i) {
      if (y[i] >= 0) out[i] = x[y[i]];
    }
    return out;
  };
  auto find_map = [&](const std::array<int, 2>& m) -> std::size_t {
    for (std::size_t k = 0; k < maps.size(); ++k) {
      if (maps[k] == m) return k;
    }
    fail(ErrorCode::Invalid, "partial injection table construction failed");
  };
  const std::size_t n = maps.size();
  s.table.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      s.table[i][j] = find_map(compose(maps[i], maps[j]));
    }
  }
  entry.scale = FiniteScale::trivial(n);
  return finish(std::move(entry));
}

}  // namespace

std::vector<CatalogEntry> builtin_catalog() {
  std::vector<CatalogEntry> catalog;
  catalog.push_back(matrix_units("b2_lambda2", mpq_class(2)));
  catalog.push_back(matrix_units("b2_half", mpq_class(1, 2)));
  catalog.push_back(matrix_units("b2_lambda3", mpq_class(3)));
  catalog.push_back(matrix_units("b2_trivial", mpq_class(1)));
  catalog.push_back(chain("chain2", 2));
  catalog.push_back(chain("chain3", 3));
  catalog.push_back(vee());
  catalog.push_back(symmetric2());
  return catalog;
}

CatalogEntry catalog_entry(const std::string& name) {
  for (CatalogEntry& entry : builtin_catalog()) {
    if (entry.name == name) return std::move(entry);
  }
  fail(ErrorCode::Invalid, "unknown catalog entry: " + name);
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const CatalogEntry& entry : builtin_catalog()) {
    names.push_back(entry.name);
  }
  return names;
}

}  // namespace crystalkit
