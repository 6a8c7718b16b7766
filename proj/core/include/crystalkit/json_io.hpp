#pragma once

#include <gmpxx.h>

#include <nlohmann/json.hpp>
#include <string>

#include "crystalkit/finite.hpp"
#include "crystalkit/hull.hpp"
#include "crystalkit/kms.hpp"
#include "crystalkit/ktheory.hpp"
#include "crystalkit/monoid.hpp"
#include "crystalkit/snf.hpp"

namespace crystalkit {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Every parse failure below throws Error(ErrorCode::Parse) with a message
// locating the offending field. Rationals are accepted as "p/q" strings or
// plain JSON integers and always emitted as "p/q" strings; big integers are
// accepted as decimal strings or JSON integers and emitted as decimal
// strings.

Json load_json_file(const std::string& path);

mpq_class rational_from_json(const Json& j, const std::string& where);
mpz_class integer_from_json(const Json& j, const std::string& where);

// {"family":"free"|"abelian"|"axb", "weights":["p/q", ...]}
ScaledMonoid monoid_from_json(const Json& j);
OrderedJson monoid_to_json(const ScaledMonoid& m);

// Family encodings: free = array of generator indices, abelian = array of
// nonnegative exponents, axb = {"b": offset, "a": factor}.
MonoidElement element_from_json(const ScaledMonoid& m, const Json& j);
OrderedJson element_to_json(const ScaledMonoid& m, const MonoidElement& x);

// {"a": element, "b": element} (aliases "s"/"t" accepted) or the string
// "zero".
SpanningElement spanning_from_json(const ScaledMonoid& m, const Json& j);
OrderedJson spanning_to_json(const ScaledMonoid& m, const SpanningElement& x);

// {"elements":[names], "zero": name|null, "table":[[index]],
//  "scale":{name:"p/q"}}. The zero element, when named, is moved to index 0;
// a missing "scale" key means the trivial scale.
struct CayleyData {
  FiniteInverseSemigroup semigroup;
  FiniteScale scale;
};
CayleyData cayley_from_json(const Json& j);
OrderedJson cayley_to_json(const FiniteInverseSemigroup& semigroup,
                           const FiniteScale& scale);

// {"beta": float, "cutoff": "p/q", "trace": {"weights": [...],
//  "angles": [[turns]]}, "element": {"s": ..., "t": ...}}. beta and cutoff
// are optional (defaults 0 and 1) so the same file feeds ground-state
// queries.
struct KmsQuery {
  double beta = 0.0;
  mpq_class cutoff = 1;
  TraceSpec trace;
  SpanningElement element;
};
KmsQuery kms_query_from_json(const ScaledMonoid& m, const Json& j);

// {"rows":[[entry]]} with integer entries only; optional "cols" fixes the
// width when there are no rows.
IntMatrix int_matrix_from_json(const Json& j);
OrderedJson int_matrix_to_json(const IntMatrix& a);

// Same shape, entries either integers or "poly:[c0,c1,...]" strings
// (ascending coefficients); optional "generators" fixes the width.
ModulePresentation module_from_json(const Json& j);

OrderedJson abelian_invariants_to_json(const AbelianInvariants& g);

// {"vertices":[names], "edges":[{"name","source","range"}]}
Graph graph_from_json(const Json& j);

// [{"vertex": name, "terms":[{"sign": +1|-1, "kind":
//   "vertex"|"edge_range", "name": ...}]}]
Substitution substitution_from_json(const Json& j);

}  // namespace crystalkit
