#include "crystalkit/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "crystalkit/error.hpp"
#include "crystalkit/rational.hpp"

namespace crystalkit {

namespace {

[[noreturn]] void parse_fail(const std::string& where,
                             const std::string& what) {
  fail(ErrorCode::Parse, where + ": " + what);
}

const Json& require_key(const Json& j, const std::string& key,
                        const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where, "missing key \"" + key + "\"");
  return *it;
}

std::string require_string(const Json& j, const std::string& where) {
  if (!j.is_string()) parse_fail(where, "expected a string");
  return j.get<std::string>();
}

std::size_t require_index(const Json& j, std::size_t bound,
                          const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    parse_fail(where, "expected a nonnegative integer");
  auto v = static_cast<unsigned long long>(j.get<long long>());
  if (v >= bound)
    parse_fail(where, "index " + std::to_string(v) + " out of range (size " +
                          std::to_string(bound) + ")");
  return static_cast<std::size_t>(v);
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Parse, "cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::Parse, path + ": " + e.what());
  }
  return j;
}

mpq_class rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      parse_fail(where, e.what());
    }
  }
  if (j.is_number_integer())
    return mpq_class(static_cast<long>(j.get<long long>()));
  parse_fail(where, "expected a rational \"p/q\" string or an integer");
}

mpz_class integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
  if (j.is_string()) {
    const std::string text = j.get<std::string>();
    mpz_class out;
    if (text.empty() || out.set_str(text, 10) != 0)
      parse_fail(where, "malformed integer \"" + text + "\"");
    return out;
  }
  parse_fail(where, "expected an integer or a decimal string");
}

ScaledMonoid monoid_from_json(const Json& j) {
  const std::string kind = require_string(require_key(j, "family", "family"),
                                          "family.family");
  std::vector<mpq_class> weights;
  if (auto it = j.find("weights"); it != j.end()) {
    if (!it->is_array()) parse_fail("family.weights", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k)
      weights.push_back(rational_from_json(
          (*it)[k], "family.weights[" + std::to_string(k) + "]"));
  }
  if (kind == "free") return ScaledMonoid::free_monoid(std::move(weights));
  if (kind == "abelian")
    return ScaledMonoid::abelian_monoid(std::move(weights));
  if (kind == "axb") {
    if (!weights.empty())
      parse_fail("family.weights",
                 "the axb family takes no weight list (its scale is fixed)");
    return ScaledMonoid::affine_monoid();
  }
  parse_fail("family.family",
             "unknown family \"" + kind + "\" (free, abelian, axb)");
}

OrderedJson monoid_to_json(const ScaledMonoid& m) {
  OrderedJson out;
  out["family"] = m.family_name();
  if (m.kind() != FamilyKind::Affine) {
    OrderedJson weights = OrderedJson::array();
    for (const auto& w : m.weights()) weights.push_back(format_rational(w));
    out["weights"] = std::move(weights);
  }
  return out;
}

MonoidElement element_from_json(const ScaledMonoid& m, const Json& j) {
  switch (m.kind()) {
    case FamilyKind::Free: {
      if (!j.is_array()) parse_fail("element", "free elements are arrays of generator indices");
      Word letters;
      for (std::size_t k = 0; k < j.size(); ++k)
        letters.push_back(static_cast<std::uint32_t>(require_index(
            j[k], m.weights().size(), "element[" + std::to_string(k) + "]")));
      return m.word_element(std::move(letters));
    }
    case FamilyKind::Abelian: {
      if (!j.is_array()) parse_fail("element", "abelian elements are arrays of exponents");
      if (j.size() != m.weights().size())
        parse_fail("element", "expected " + std::to_string(m.weights().size()) +
                                  " exponents, got " + std::to_string(j.size()));
      Exponents exponents;
      for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string where = "element[" + std::to_string(k) + "]";
        if (!j[k].is_number_integer() || j[k].get<long long>() < 0)
          parse_fail(where, "expected a nonnegative integer exponent");
        exponents.push_back(j[k].get<long long>());
      }
      return m.abelian_element(std::move(exponents));
    }
    case FamilyKind::Affine: {
      mpz_class offset = integer_from_json(require_key(j, "b", "element"),
                                           "element.b");
      mpz_class factor = integer_from_json(require_key(j, "a", "element"),
                                           "element.a");
      if (offset < 0) parse_fail("element.b", "offset must be nonnegative");
      if (factor < 1) parse_fail("element.a", "factor must be at least one");
      return m.affine_element(offset, factor);
    }
  }
  parse_fail("element", "unreachable family kind");
}

OrderedJson element_to_json(const ScaledMonoid& m, const MonoidElement& x) {
  switch (m.kind()) {
    case FamilyKind::Free: {
      OrderedJson out = OrderedJson::array();
      for (auto letter : x.word()) out.push_back(letter);
      return out;
    }
    case FamilyKind::Abelian: {
      OrderedJson out = OrderedJson::array();
      for (auto e : x.exponents()) out.push_back(e);
      return out;
    }
    case FamilyKind::Affine: {
      OrderedJson out;
      out["b"] = x.affine().offset.get_str();
      out["a"] = x.affine().factor.get_str();
      return out;
    }
  }
  fail(ErrorCode::Invalid, "unreachable family kind");
}

SpanningElement spanning_from_json(const ScaledMonoid& m, const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "zero") return SpanningElement{};
    parse_fail("element", "the only string form is \"zero\"");
  }
  if (!j.is_object())
    parse_fail("element", "expected {\"s\":...,\"t\":...} or \"zero\"");
  const Json* s = nullptr;
  const Json* t = nullptr;
  if (auto it = j.find("s"); it != j.end()) s = &*it;
  if (auto it = j.find("a"); it != j.end()) s = &*it;
  if (auto it = j.find("t"); it != j.end()) t = &*it;
  if (auto it = j.find("b"); it != j.end()) t = &*it;
  if (s == nullptr || t == nullptr)
    parse_fail("element", "need keys \"s\" and \"t\" (or \"a\" and \"b\")");
  return spanning_element(m, element_from_json(m, *s),
                          element_from_json(m, *t));
}

OrderedJson spanning_to_json(const ScaledMonoid& m, const SpanningElement& x) {
  if (x.zero) return OrderedJson("zero");
  OrderedJson out;
  out["a"] = element_to_json(m, x.a);
  out["b"] = element_to_json(m, x.b);
  return out;
}

CayleyData cayley_from_json(const Json& j) {
  const Json& elements = require_key(j, "elements", "cayley");
  if (!elements.is_array() || elements.empty())
    parse_fail("cayley.elements", "expected a nonempty array of names");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < elements.size(); ++k) {
    names.push_back(require_string(elements[k],
                                   "cayley.elements[" + std::to_string(k) + "]"));
    for (std::size_t i = 0; i + 1 < names.size(); ++i)
      if (names[i] == names.back())
        parse_fail("cayley.elements", "duplicate name \"" + names.back() + "\"");
  }
  const std::size_t n = names.size();

  const Json& zero = require_key(j, "zero", "cayley");
  bool has_zero = false;
  std::size_t zero_index = 0;
  if (!zero.is_null()) {
    const std::string zero_name = require_string(zero, "cayley.zero");
    auto it = std::find(names.begin(), names.end(), zero_name);
    if (it == names.end())
      parse_fail("cayley.zero", "\"" + zero_name + "\" is not an element");
    has_zero = true;
    zero_index = static_cast<std::size_t>(it - names.begin());
  }

  const Json& table = require_key(j, "table", "cayley");
  if (!table.is_array() || table.size() != n)
    parse_fail("cayley.table", "expected " + std::to_string(n) + " rows");
  std::vector<std::vector<std::size_t>> rows(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string where = "cayley.table[" + std::to_string(i) + "]";
    if (!table[i].is_array() || table[i].size() != n)
      parse_fail(where, "expected " + std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k)
      rows[i][k] = require_index(table[i][k], n,
                                 where + "[" + std::to_string(k) + "]");
  }

  std::vector<mpq_class> scale(n, 1);
  if (auto it = j.find("scale"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) parse_fail("cayley.scale", "expected an object");
    for (auto entry = it->begin(); entry != it->end(); ++entry) {
      auto pos = std::find(names.begin(), names.end(), entry.key());
      if (pos == names.end())
        parse_fail("cayley.scale", "\"" + entry.key() + "\" is not an element");
      scale[static_cast<std::size_t>(pos - names.begin())] =
          rational_from_json(entry.value(), "cayley.scale." + entry.key());
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (has_zero && k == zero_index) continue;
      if (it->find(names[k]) == it->end())
        parse_fail("cayley.scale", "no value for element \"" + names[k] + "\"");
    }
  }

  // The in-memory convention keeps the zero element at index 0.
  std::vector<std::size_t> to_new(n);
  if (has_zero && zero_index != 0) {
    to_new[zero_index] = 0;
    std::size_t next = 1;
    for (std::size_t k = 0; k < n; ++k)
      if (k != zero_index) to_new[k] = next++;
  } else {
    for (std::size_t k = 0; k < n; ++k) to_new[k] = k;
  }

  CayleyData out;
  out.semigroup.has_zero = has_zero;
  out.semigroup.names.resize(n);
  out.scale.value.assign(n, 1);
  out.semigroup.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t k = 0; k < n; ++k) {
    out.semigroup.names[to_new[k]] = names[k];
    out.scale.value[to_new[k]] = scale[k];
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      out.semigroup.table[to_new[i]][to_new[k]] = to_new[rows[i][k]];
  return out;
}

OrderedJson cayley_to_json(const FiniteInverseSemigroup& semigroup,
                           const FiniteScale& scale) {
  OrderedJson out;
  out["elements"] = semigroup.names;
  if (semigroup.has_zero)
    out["zero"] = semigroup.names[0];
  else
    out["zero"] = nullptr;
  OrderedJson table = OrderedJson::array();
  for (const auto& row : semigroup.table) table.push_back(row);
  out["table"] = std::move(table);
  OrderedJson values;
  for (std::size_t k = semigroup.has_zero ? 1 : 0; k < semigroup.size(); ++k)
    values[semigroup.names[k]] = format_rational(scale.value[k]);
  out["scale"] = std::move(values);
  return out;
}

KmsQuery kms_query_from_json(const ScaledMonoid& m, const Json& j) {
  if (!j.is_object()) parse_fail("query", "expected an object");
  KmsQuery out;
  if (auto it = j.find("beta"); it != j.end()) {
    if (!it->is_number()) parse_fail("query.beta", "expected a number");
    out.beta = it->get<double>();
  }
  if (auto it = j.find("cutoff"); it != j.end())
    out.cutoff = rational_from_json(*it, "query.cutoff");

  const Json& trace = require_key(j, "trace", "query");
  const Json& weights = require_key(trace, "weights", "query.trace");
  const Json& angles = require_key(trace, "angles", "query.trace");
  if (!weights.is_array()) parse_fail("query.trace.weights", "expected an array");
  if (!angles.is_array()) parse_fail("query.trace.angles", "expected an array");
  std::vector<mpq_class> w;
  for (std::size_t k = 0; k < weights.size(); ++k)
    w.push_back(rational_from_json(
        weights[k], "query.trace.weights[" + std::to_string(k) + "]"));
  std::vector<std::vector<mpq_class>> a;
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const std::string where = "query.trace.angles[" + std::to_string(k) + "]";
    if (!angles[k].is_array()) parse_fail(where, "expected an array of turns");
    std::vector<mpq_class> row;
    for (std::size_t i = 0; i < angles[k].size(); ++i)
      row.push_back(rational_from_json(angles[k][i],
                                       where + "[" + std::to_string(i) + "]"));
    a.push_back(std::move(row));
  }
  out.trace = trace_spec(m, std::move(w), std::move(a));
  out.element = spanning_from_json(m, require_key(j, "element", "query"));
  return out;
}

namespace {

bool is_poly_entry(const Json& j, std::string* body) {
  if (!j.is_string()) return false;
  const std::string text = j.get<std::string>();
  constexpr const char* kPrefix = "poly:";
  if (text.rfind(kPrefix, 0) != 0) return false;
  *body = text.substr(5);
  return true;
}

IntPoly poly_from_entry(const Json& j, const std::string& where) {
  std::string body;
  if (is_poly_entry(j, &body)) {
    Json coeffs;
    try {
      coeffs = Json::parse(body);
    } catch (const Json::parse_error& e) {
      parse_fail(where, std::string("bad poly coefficient list: ") + e.what());
    }
    if (!coeffs.is_array()) parse_fail(where, "poly body must be an array");
    std::vector<mpz_class> c;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      c.push_back(integer_from_json(coeffs[k],
                                    where + ".coeff[" + std::to_string(k) + "]"));
    return IntPoly::from_coeffs(std::move(c));
  }
  return IntPoly::constant(integer_from_json(j, where));
}

// Shared row scaffolding for integer matrices and module presentations.
template <typename Entry, typename ParseEntry>
std::pair<std::vector<std::vector<Entry>>, std::size_t> rows_from_json(
    const Json& j, const char* width_key, ParseEntry parse_entry) {
  const Json& rows = require_key(j, "rows", "matrix");
  if (!rows.is_array()) parse_fail("matrix.rows", "expected an array of rows");
  std::size_t cols = 0;
  bool cols_known = false;
  if (auto it = j.find(width_key); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 0)
      parse_fail(std::string("matrix.") + width_key,
                 "expected a nonnegative integer");
    cols = static_cast<std::size_t>(it->get<long long>());
    cols_known = true;
  }
  std::vector<std::vector<Entry>> data;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = "matrix.rows[" + std::to_string(i) + "]";
    if (!rows[i].is_array()) parse_fail(where, "expected an array");
    if (!cols_known) {
      cols = rows[i].size();
      cols_known = true;
    }
    if (rows[i].size() != cols)
      parse_fail(where, "expected " + std::to_string(cols) + " entries, got " +
                            std::to_string(rows[i].size()));
    std::vector<Entry> row;
    for (std::size_t k = 0; k < cols; ++k)
      row.push_back(parse_entry(rows[i][k],
                                where + "[" + std::to_string(k) + "]"));
    data.push_back(std::move(row));
  }
  if (!cols_known)
    parse_fail("matrix", std::string("no rows; add \"") + width_key +
                             "\" to fix the width");
  return {std::move(data), cols};
}

}  // namespace

IntMatrix int_matrix_from_json(const Json& j) {
  auto [data, cols] = rows_from_json<mpz_class>(
      j, "cols", [](const Json& entry, const std::string& where) {
        std::string body;
        if (is_poly_entry(entry, &body))
          parse_fail(where, "polynomial entry in an integer matrix");
        return integer_from_json(entry, where);
      });
  IntMatrix out = IntMatrix::zero(data.size(), cols);
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t k = 0; k < cols; ++k) out.at(i, k) = data[i][k];
  return out;
}

OrderedJson int_matrix_to_json(const IntMatrix& a) {
  OrderedJson rows = OrderedJson::array();
  for (std::size_t i = 0; i < a.rows; ++i) {
    OrderedJson row = OrderedJson::array();
    for (std::size_t k = 0; k < a.cols; ++k) {
      const mpz_class& v = a.at(i, k);
      if (v.fits_slong_p())
        row.push_back(v.get_si());
      else
        row.push_back(v.get_str());
    }
    rows.push_back(std::move(row));
  }
  OrderedJson out;
  out["rows"] = std::move(rows);
  out["cols"] = a.cols;
  return out;
}

ModulePresentation module_from_json(const Json& j) {
  auto [data, cols] = rows_from_json<IntPoly>(j, "generators", poly_from_entry);
  ModulePresentation out;
  out.generators = cols;
  out.relations = std::move(data);
  return out;
}

OrderedJson abelian_invariants_to_json(const AbelianInvariants& g) {
  OrderedJson out;
  out["free_rank"] = g.free_rank;
  OrderedJson torsion = OrderedJson::array();
  for (const auto& d : g.torsion) torsion.push_back(d.get_str());
  out["torsion"] = std::move(torsion);
  out["pretty"] = abelian_to_string(g);
  return out;
}

Graph graph_from_json(const Json& j) {
  Graph g;
  const Json& vertices = require_key(j, "vertices", "graph");
  if (!vertices.is_array()) parse_fail("graph.vertices", "expected an array");
  for (std::size_t k = 0; k < vertices.size(); ++k)
    g.vertices.push_back(
        require_string(vertices[k], "graph.vertices[" + std::to_string(k) + "]"));
  const Json& edges = require_key(j, "edges", "graph");
  if (!edges.is_array()) parse_fail("graph.edges", "expected an array");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string where = "graph.edges[" + std::to_string(k) + "]";
    GraphEdge e;
    e.name = require_string(require_key(edges[k], "name", where), where + ".name");
    e.source =
        require_string(require_key(edges[k], "source", where), where + ".source");
    e.range =
        require_string(require_key(edges[k], "range", where), where + ".range");
    g.edges.push_back(std::move(e));
  }
  return g;
}

Substitution substitution_from_json(const Json& j) {
  if (!j.is_array())
    parse_fail("substitution", "expected an array of vertex images");
  Substitution s;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string where = "substitution[" + std::to_string(k) + "]";
    VertexImage image;
    image.vertex =
        require_string(require_key(j[k], "vertex", where), where + ".vertex");
    const Json& terms = require_key(j[k], "terms", where);
    if (!terms.is_array()) parse_fail(where + ".terms", "expected an array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string twhere = where + ".terms[" + std::to_string(i) + "]";
      SubstitutionTerm term;
      const Json& sign = require_key(terms[i], "sign", twhere);
      if (sign.is_number_integer() &&
          (sign.get<long long>() == 1 || sign.get<long long>() == -1)) {
        term.sign = static_cast<int>(sign.get<long long>());
      } else if (sign.is_string() &&
                 (sign.get<std::string>() == "+" ||
                  sign.get<std::string>() == "-")) {
        term.sign = sign.get<std::string>() == "+" ? 1 : -1;
      } else {
        parse_fail(twhere + ".sign", "expected +1, -1, \"+\" or \"-\"");
      }
      const std::string kind =
          require_string(require_key(terms[i], "kind", twhere), twhere + ".kind");
      if (kind == "vertex") {
        term.edge_range = false;
      } else if (kind == "edge_range") {
        term.edge_range = true;
      } else {
        parse_fail(twhere + ".kind",
                   "unknown kind \"" + kind + "\" (vertex, edge_range)");
      }
      term.name =
          require_string(require_key(terms[i], "name", twhere), twhere + ".name");
      image.terms.push_back(std::move(term));
    }
    s.images.push_back(std::move(image));
  }
  return s;
}

}  // namespace crystalkit
