// Command-line front end: parses family/semigroup/matrix inputs, dispatches
// to the library engines, and emits a human-readable report on stdout plus an
// optional machine-readable JSON report. Exit codes: 0 = ok, 1 = a
// certificate failed (mathematical violation), 2 = input error.

#include <CLI11.hpp>

#include <cctype>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "crystalkit/catalog.hpp"
#include "crystalkit/error.hpp"
#include "crystalkit/finite.hpp"
#include "crystalkit/hull.hpp"
#include "crystalkit/json_io.hpp"
#include "crystalkit/kms.hpp"
#include "crystalkit/ktheory.hpp"
#include "crystalkit/monoid.hpp"
#include "crystalkit/rational.hpp"
#include "crystalkit/report.hpp"
#include "crystalkit/verify.hpp"

namespace ck = crystalkit;
using ck::OrderedJson;
using ck::Report;

namespace {

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

ck::ScaledMonoid monoid_from_flags(const std::string& family,
                                   const std::string& weights) {
  ck::Json spec;
  spec["family"] = family;
  if (!weights.empty()) {
    ck::Json list = ck::Json::array();
    std::string piece;
    for (char c : weights + ",") {
      if (c == ',') {
        if (piece.empty())
          ck::fail(ck::ErrorCode::Parse, "--weights: empty entry in list");
        list.push_back(piece);
        piece.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        piece += c;
      }
    }
    spec["weights"] = std::move(list);
  } else if (family == "free" || family == "abelian") {
    ck::fail(ck::ErrorCode::Parse,
             "--family " + family + " needs --weights (e.g. --weights 2/1,2/1)");
  }
  return ck::monoid_from_json(spec);
}

// ---------------------------------------------------------------------------
// crystal

void crystal_provenance(Report& r) {
  r.provenance["ecx"] =
      "nonzero idempotents p such that every g with g^{-1}g = p has scale at "
      "least one";
  r.provenance["icx"] =
      "scale-one elements whose domain idempotent survives, with zero "
      "adjoined; the product is truncated to this set";
  r.provenance["boundary"] =
      "semicharacters supported inside the surviving idempotents; computed "
      "both as the complement of the cylinders of the others and by the "
      "vanishing rule";
  r.provenance["restriction"] =
      "certificate that restricting the germ groupoid to the boundary "
      "characters is isomorphic to the germ groupoid of the crystal";
  r.provenance["transversality"] =
      "every nonzero idempotent p carries some g with g^{-1}g = p and "
      "gg^{-1} surviving";
}

Report run_crystal_finite(const ck::FiniteInverseSemigroup& input,
                          const ck::FiniteScale& scale,
                          const std::string& source) {
  Report r = ck::ok_report();
  crystal_provenance(r);
  r.payload["source"] = source;

  ck::FiniteInverseSemigroup I = input;
  ck::ValidationReport v = ck::validate(I, scale);
  if (!v.ok) {
    r.status = "violation";
    r.witness = v.detail;
    r.notes.push_back("input is not a scaled inverse semigroup");
    return r;
  }
  r.payload["elements"] = I.names;

  ck::CrystalResult c = ck::crystal(I, scale);
  std::vector<std::string> ecx_names;
  for (std::size_t p : c.ecx) ecx_names.push_back(I.names[p]);
  std::vector<std::string> icx_names;
  for (const std::string& name : c.crystal.names) icx_names.push_back(name);
  r.payload["ecx"] = ecx_names;
  r.payload["icx"] = icx_names;
  r.payload["crystal"] = ck::cayley_to_json(c.crystal, c.crystal_scale);

  ck::BoundaryReport b = ck::boundary_set(I, scale);
  std::vector<std::string> boundary_names;
  for (std::uint32_t mask : b.members)
    boundary_names.push_back("chi" + b.omega.to_string(I, mask));
  r.payload["boundary"] = boundary_names;

  ck::RestrictionCertificate cert = ck::restriction_iso_certificate(I, scale);
  OrderedJson cert_json;
  cert_json["pass"] = cert.pass;
  cert_json["boundary_objects"] = cert.boundary_objects;
  cert_json["restricted_arrows"] = cert.restricted_arrows;
  cert_json["crystal_arrows"] = cert.crystal_arrows;
  cert_json["composable_pairs_checked"] = cert.composable_pairs_checked;
  r.payload["restriction"] = std::move(cert_json);

  ck::TransversalityReport t = ck::transversality_check(I, scale);
  OrderedJson titems = OrderedJson::array();
  for (const auto& item : t.items) {
    OrderedJson row;
    row["p"] = I.names[item.p];
    if (item.witness)
      row["witness"] = I.names[*item.witness];
    else
      row["witness"] = nullptr;
    titems.push_back(std::move(row));
  }
  OrderedJson tjson;
  tjson["pass"] = t.pass;
  tjson["items"] = std::move(titems);
  r.payload["transversality"] = std::move(tjson);

  r.notes.push_back("E_c^x = {" + join(ecx_names) + "}");
  r.notes.push_back("I_c = {" + join(icx_names) + "}");
  r.notes.push_back("boundary = {" + join(boundary_names) + "}");
  r.notes.push_back(
      "restriction certificate: " + std::string(cert.pass ? "pass" : "FAIL") +
      " (" + std::to_string(cert.boundary_objects) + " boundary objects, " +
      std::to_string(cert.restricted_arrows) + " arrows)");
  r.notes.push_back("transversality: " +
                    std::string(t.pass ? "pass" : "FAIL"));

  if (!cert.pass) {
    r.status = "violation";
    r.witness = cert.detail;
  } else if (!t.pass) {
    r.status = "violation";
    r.witness = t.detail;
  }
  return r;
}

Report run_crystal_hull(const ck::ScaledMonoid& monoid,
                        const mpq_class& value_bound, std::size_t size_bound) {
  Report r = ck::ok_report();
  r.provenance["idempotents"] =
      "ideals p_{aS} with component value at most the bound; membership in "
      "the crystal means no g with g^{-1}g = p_{aS} has scale below one, "
      "which holds exactly when a lies in ker N; every excluded idempotent "
      "carries an explicit scale-violating witness";
  r.provenance["kernel_pairs_checked"] =
      "pairs a b^{-1} with both legs in ker N, closed under composition";

  ck::InverseHull hull(monoid);
  ck::HullCrystalCertificate cert =
      hull.crystal_certificate_hull(value_bound, size_bound);

  r.payload["family"] = ck::monoid_to_json(monoid);
  r.payload["value_bound"] = ck::format_rational(value_bound);
  r.payload["size_bound"] = size_bound;
  OrderedJson rows = OrderedJson::array();
  for (const auto& item : cert.idempotents) {
    OrderedJson row;
    row["ideal_generator"] = monoid.to_string(item.ideal_generator);
    row["crystal_member"] = item.crystal_member;
    if (item.violator)
      row["violator"] = hull.to_string(*item.violator);
    else
      row["violator"] = nullptr;
    rows.push_back(std::move(row));
  }
  r.payload["idempotents"] = std::move(rows);
  r.payload["kernel_pairs_checked"] = cert.kernel_pairs_checked;
  r.payload["kernel_closure_ok"] = cert.kernel_closure_ok;

  std::size_t members = 0;
  for (const auto& item : cert.idempotents)
    if (item.crystal_member) ++members;
  r.notes.push_back("hull crystal certificate: " +
                    std::string(cert.pass ? "pass" : "FAIL") + " (" +
                    std::to_string(cert.idempotents.size()) +
                    " idempotents checked, " + std::to_string(members) +
                    " in the crystal, " +
                    std::to_string(cert.kernel_pairs_checked) +
                    " kernel pairs closed)");
  if (!cert.pass || !cert.kernel_closure_ok) {
    r.status = "violation";
    r.witness = cert.detail;
  }
  return r;
}

// ---------------------------------------------------------------------------
// zeta

Report run_zeta(const ck::ScaledMonoid& monoid, double beta,
                const mpq_class& cutoff, bool with_threshold) {
  Report r = ck::ok_report();
  r.provenance["partial"] =
      "sum of N^{-beta} over scale-equivalence classes with value at most "
      "the cutoff";
  r.provenance["closed_form"] = "limit of the full series, when one is known";
  r.provenance["tail_bound"] =
      "bound on the difference between the full series and the partial sum";
  r.provenance["abscissa"] =
      "least inverse temperature at which the full series is finite";
  r.provenance["threshold"] =
      "inverse temperature where the full series equals two";

  ck::ZetaResult z = ck::zeta(monoid, beta, cutoff);
  r.payload["family"] = ck::monoid_to_json(monoid);
  r.payload["beta"] = beta;
  r.payload["cutoff"] = ck::format_rational(cutoff);
  OrderedJson partial;
  partial["value"] = z.partial;
  partial["classes_used"] = z.classes_used.get_str();
  if (z.tail_bound) {
    partial["tail_bound"] = *z.tail_bound;
    partial["rigorous"] = z.tail_rigorous;
  }
  r.payload["partial"] = std::move(partial);
  if (z.closed_form)
    r.payload["closed_form"] = ck::numeric_exact(*z.closed_form);
  else
    r.payload["closed_form"] = nullptr;
  r.payload["abscissa"] = z.abscissa;
  r.payload["divergent"] = z.divergent;

  r.notes.push_back("zeta partial = " + fmt(z.partial) + " over " +
                    z.classes_used.get_str() + " classes (cutoff " +
                    ck::format_rational(cutoff) + ")");
  if (z.closed_form)
    r.notes.push_back("closed form = " + fmt(*z.closed_form, 5));
  if (z.tail_bound)
    r.notes.push_back("tail bound = " + fmt(*z.tail_bound) +
                      (z.tail_rigorous ? " (rigorous)" : " (heuristic)"));
  if (z.divergent)
    r.notes.push_back("the full series diverges at this inverse temperature");

  if (with_threshold) {
    ck::ThresholdReport t = ck::beta_threshold(monoid);
    OrderedJson tj;
    tj["beta_star"] = t.beta_star;
    tj["exact"] = t.exact;
    tj["abscissa"] = t.abscissa;
    r.payload["threshold"] = std::move(tj);
    r.notes.push_back("threshold beta* = " + fmt(t.beta_star) +
                      (t.exact ? " (exact)" : " (bisected)"));
  }
  return r;
}

// ---------------------------------------------------------------------------
// kms / ground

Report run_kms(const ck::ScaledMonoid& monoid, const ck::KmsQuery& query,
               bool check, std::size_t samples, std::uint64_t seed) {
  Report r = ck::ok_report();
  if (check) {
    r.provenance["max_residual"] =
        "largest sampled violation of the equilibrium identity phi(yx) = "
        "(N(s)/N(t))^{-beta} phi(xy) for y = v_s v_t^*, with the matching "
        "truncation allowance";
    ck::KmsConditionReport c = ck::kms_condition_check(
        monoid, query.beta, query.trace, samples, query.cutoff, seed);
    r.payload["family"] = ck::monoid_to_json(monoid);
    r.payload["beta"] = query.beta;
    r.payload["cutoff"] = ck::format_rational(query.cutoff);
    r.payload["samples"] = c.samples;
    r.payload["seed"] = seed;
    r.payload["max_residual"] =
        ck::numeric_with_tail(c.max_residual, c.max_allowance, c.tail_rigorous);
    r.payload["worst_pair"] = c.worst_pair;
    r.payload["pass"] = c.pass;
    r.notes.push_back("equilibrium condition: " +
                      std::string(c.pass ? "pass" : "FAIL") + " (max residual " +
                      fmt(c.max_residual) + ", allowance " +
                      fmt(c.max_allowance) + ", " +
                      std::to_string(c.samples) + " samples)");
    if (!c.pass) {
      r.status = "violation";
      r.witness = "equilibrium identity violated beyond the allowance at " +
                  c.worst_pair;
    }
    return r;
  }

  r.provenance["value"] =
      "zeta-normalized sum of N(sr)^{-beta} tau(v_q v_p^*) over "
      "scale-equivalence classes [r] below the cutoff with sr ~ tr, where "
      "s r p = t r q with p, q in ker N";
  r.provenance["zeta_partial"] =
      "normalizing partial sum of N^{-beta} over the same classes";
  ck::KmsResult k =
      ck::kms_value(monoid, query.beta, query.trace, query.element, query.cutoff);
  r.payload["family"] = ck::monoid_to_json(monoid);
  r.payload["beta"] = query.beta;
  r.payload["cutoff"] = ck::format_rational(query.cutoff);
  r.payload["element"] = ck::spanning_to_json(monoid, query.element);
  OrderedJson value;
  value["re"] = k.value.real();
  value["im"] = k.value.imag();
  value["tail_bound"] = k.tail_allowance;
  value["rigorous"] = k.tail_rigorous;
  r.payload["value"] = std::move(value);
  r.payload["zeta_partial"] = k.zeta_partial;
  r.payload["classes_used"] = k.classes_used.get_str();
  r.notes.push_back("value = " + fmt(k.value.real()) + " + " +
                    fmt(k.value.imag()) + "i (tail allowance " +
                    fmt(k.tail_allowance) +
                    (k.tail_rigorous ? ", rigorous)" : ", heuristic)"));
  return r;
}

Report run_ground(const ck::ScaledMonoid& monoid, const ck::KmsQuery& query) {
  Report r = ck::ok_report();
  r.provenance["value"] =
      "trace of the kernel part: tau(v_s v_t^*) when both legs lie in ker N, "
      "zero otherwise; the zero-temperature limit of the equilibrium values";
  std::complex<double> g =
      ck::ground_value(monoid, query.trace, query.element);
  r.payload["family"] = ck::monoid_to_json(monoid);
  r.payload["element"] = ck::spanning_to_json(monoid, query.element);
  OrderedJson value;
  value["re"] = g.real();
  value["im"] = g.imag();
  value["exact"] = true;
  r.payload["value"] = std::move(value);
  r.notes.push_back("ground value = " + fmt(g.real()) + " + " +
                    fmt(g.imag()) + "i");
  return r;
}

// ---------------------------------------------------------------------------
// ktheory

Report run_ktheory(const std::string& op, const std::string& matrix_path,
                   const std::string& module_path,
                   const std::string& graph_path,
                   const std::string& substitution_path, std::size_t cycle,
                   std::size_t truncation) {
  Report r = ck::ok_report();
  auto need = [](const std::string& value, const std::string& flag,
                 const std::string& for_op) {
    if (value.empty())
      ck::fail(ck::ErrorCode::Parse,
               "--op " + for_op + " needs " + flag + " FILE");
  };

  if (op == "snf") {
    need(matrix_path, "--matrix", op);
    ck::IntMatrix a = ck::int_matrix_from_json(ck::load_json_file(matrix_path));
    ck::SmithDecomposition s = ck::smith_normal_form(a);
    bool verified = ck::mat_mul(ck::mat_mul(s.u, a), s.v) == s.d &&
                    abs(ck::mat_determinant(s.u)) == 1 &&
                    abs(ck::mat_determinant(s.v)) == 1;
    r.provenance["diagonal"] =
        "U*A*V = D diagonal with each entry dividing the next; U and V "
        "unimodular";
    OrderedJson diag = OrderedJson::array();
    for (const auto& d : s.diagonal) diag.push_back(d.get_str());
    r.payload["diagonal"] = std::move(diag);
    r.payload["rank"] = s.rank;
    r.payload["u"] = ck::int_matrix_to_json(s.u);
    r.payload["v"] = ck::int_matrix_to_json(s.v);
    r.payload["verified"] = verified;
    std::string diag_text;
    for (const auto& d : s.diagonal)
      diag_text += (diag_text.empty() ? "" : ", ") + d.get_str();
    r.notes.push_back("diagonal = (" + diag_text + "), rank " +
                      std::to_string(s.rank));
    if (!verified) {
      r.status = "violation";
      r.witness = "Smith decomposition failed re-verification on this input";
    }
  } else if (op == "cokernel") {
    need(matrix_path, "--matrix", op);
    ck::IntMatrix a = ck::int_matrix_from_json(ck::load_json_file(matrix_path));
    ck::AbelianInvariants g = ck::cokernel(a);
    r.provenance["invariants"] =
        "invariant factors of the abelian group Z^cols modulo the row space";
    r.payload["invariants"] = ck::abelian_invariants_to_json(g);
    r.notes.push_back("cokernel = " + ck::abelian_to_string(g));
  } else if (op == "quotients") {
    need(module_path, "--module", op);
    ck::ModulePresentation p =
        ck::module_from_json(ck::load_json_file(module_path));
    ck::ZtQuotients q = ck::zt_quotients(p);
    r.provenance["at_t_equals_0"] =
        "integer cokernel of the relations evaluated at t = 0 (the quotient "
        "by t)";
    r.provenance["at_t_equals_1"] =
        "integer cokernel of the relations evaluated at t = 1 (the quotient "
        "by 1-t)";
    r.payload["at_t_equals_0"] = ck::abelian_invariants_to_json(q.at_t_equals_0);
    r.payload["at_t_equals_1"] = ck::abelian_invariants_to_json(q.at_t_equals_1);
    r.notes.push_back("M/tM = " + ck::abelian_to_string(q.at_t_equals_0) +
                      ", M/(1-t)M = " +
                      ck::abelian_to_string(q.at_t_equals_1));
  } else if (op == "smith-poly") {
    need(module_path, "--module", op);
    ck::ModulePresentation p =
        ck::module_from_json(ck::load_json_file(module_path));
    ck::PolyMatrix pm = ck::PolyMatrix::zero(p.relations.size(), p.generators);
    for (std::size_t i = 0; i < p.relations.size(); ++i)
      for (std::size_t k = 0; k < p.generators; ++k)
        pm.at(i, k) = ck::RatPoly::from_int(p.relations[i][k]);
    std::vector<ck::RatPoly> factors = ck::qt_smith(pm);
    r.provenance["factors"] =
        "monic invariant factors of the relation matrix over rational "
        "polynomials, each dividing the next";
    OrderedJson rows = OrderedJson::array();
    std::vector<std::string> texts;
    for (const auto& f : factors) {
      rows.push_back(f.to_string());
      texts.push_back(f.to_string());
    }
    r.payload["factors"] = std::move(rows);
    r.notes.push_back("invariant factors: " + join(texts));
  } else if (op == "circle") {
    need(module_path, "--module", op);
    ck::ModulePresentation p =
        ck::module_from_json(ck::load_json_file(module_path));
    ck::CircleTheoremReport c = ck::circle_theorem_check(p);
    r.provenance["isomorphic"] =
        "when t acts with zero kernel and no nonzero fixed points "
        "(equivalently, no invariant factor vanishes at 0 or 1), the "
        "quotients by t and by 1-t have equal vector-space dimension";
    r.payload["hypothesis_fg"] = c.hypothesis_fg;
    r.payload["hypothesis_t_regular"] = c.hypothesis_t_regular;
    r.payload["dim_m_mod_t"] = c.dim_m_mod_t;
    r.payload["dim_m_mod_one_minus_t"] = c.dim_m_mod_one_minus_t;
    r.payload["isomorphic"] = c.isomorphic;
    OrderedJson factors = OrderedJson::array();
    for (const auto& f : c.invariant_factors) factors.push_back(f.to_string());
    r.payload["invariant_factors"] = std::move(factors);
    r.notes.push_back(
        std::string("hypotheses ") +
        (c.hypothesis_t_regular ? "hold" : "FAIL (kernel or fixed vectors)") +
        "; dim M/tM = " + std::to_string(c.dim_m_mod_t) +
        ", dim M/(1-t)M = " + std::to_string(c.dim_m_mod_one_minus_t) +
        (c.isomorphic ? " (equal)" : " (different)"));
  } else if (op == "graph") {
    need(graph_path, "--graph", op);
    need(substitution_path, "--substitution", op);
    ck::Graph g = ck::graph_from_json(ck::load_json_file(graph_path));
    ck::Substitution s =
        ck::substitution_from_json(ck::load_json_file(substitution_path));
    ck::IntMatrix m = ck::graph_substitution_matrix(g, s);
    r.provenance["matrix"] =
        "induced endomorphism of the free abelian group on the vertex "
        "projections, substituting [t_h t_h^*] = [q_{source(h)}]; column j "
        "is the image of vertex j";
    r.payload["vertices"] = g.vertices;
    r.payload["matrix"] = ck::int_matrix_to_json(m);
    r.notes.push_back("class matrix on " + std::to_string(g.vertices.size()) +
                      " vertices");
  } else if (op == "dynam") {
    if (cycle == 0)
      ck::fail(ck::ErrorCode::Parse, "--op dynam needs --cycle M (M >= 1)");
    if (truncation == 0) truncation = 4 * cycle;
    ck::DynamCokernels c = ck::dynam_cokernels(cycle, truncation);
    r.provenance["coker_one_minus_t"] =
        "integer cokernel of 1-t on the finite-rank model of the "
        "one-sided-orbit functions (shift with zero fill)";
    r.provenance["coker_t"] = "integer cokernel of t on the same model";
    r.payload["cycle"] = cycle;
    r.payload["truncation"] = truncation;
    r.payload["coker_one_minus_t"] =
        ck::abelian_invariants_to_json(c.coker_one_minus_t);
    r.payload["coker_t"] = ck::abelian_invariants_to_json(c.coker_t);
    r.notes.push_back(
        "coker(1-t) = " + ck::abelian_to_string(c.coker_one_minus_t) +
        ", coker(t) = " + ck::abelian_to_string(c.coker_t));
  } else {
    ck::fail(ck::ErrorCode::Parse,
             "unknown --op \"" + op +
                 "\" (snf, cokernel, quotients, smith-poly, circle, graph, "
                 "dynam)");
  }
  return r;
}

// ---------------------------------------------------------------------------
// schemas

OrderedJson schemas() {
  OrderedJson s;
  s["family"] = OrderedJson::parse(R"json({
    "type": "object",
    "properties": {
      "family": {"enum": ["free", "abelian", "axb"]},
      "weights": {"type": "array", "items": {"type": "string",
        "description": "rational p/q, one per generator; >= 1; absent for axb"}}
    },
    "required": ["family"]
  })json");
  s["element"] = OrderedJson::parse(R"json({
    "description": "family-specific encoding",
    "free": {"type": "array", "items": "generator index"},
    "abelian": {"type": "array", "items": "nonnegative exponent"},
    "axb": {"type": "object", "properties": {
      "b": "nonnegative integer (decimal string or number)",
      "a": "positive integer (decimal string or number)"}}
  })json");
  s["spanning_element"] = OrderedJson::parse(R"json({
    "description": "v_s v_t^* as {\"s\": element, \"t\": element} (aliases a/b), or the string \"zero\""
  })json");
  s["cayley_table"] = OrderedJson::parse(R"json({
    "type": "object",
    "properties": {
      "elements": {"type": "array", "items": "name"},
      "zero": "name of the zero element, or null",
      "table": {"type": "array", "items": {"type": "array",
        "items": "index of the product into elements"}},
      "scale": {"type": "object",
        "description": "name -> rational p/q; optional (defaults to 1)"}
    },
    "required": ["elements", "zero", "table"]
  })json");
  s["kms_query"] = OrderedJson::parse(R"json({
    "type": "object",
    "properties": {
      "beta": {"type": "number", "description": "inverse temperature"},
      "cutoff": "rational p/q truncation bound on class values",
      "trace": {"type": "object", "properties": {
        "weights": {"type": "array", "items": "rational p/q, positive, summing to 1"},
        "angles": {"type": "array",
          "items": "array of rational turns, one per kernel generator"}}},
      "element": {"$ref": "spanning_element"}
    },
    "required": ["trace", "element"]
  })json");
  s["matrix"] = OrderedJson::parse(R"json({
    "type": "object",
    "properties": {
      "rows": {"type": "array", "items": {"type": "array",
        "items": "integer, or \"poly:[c0,c1,...]\" for module presentations"}},
      "cols": "optional width when rows is empty (alias: generators)"
    },
    "required": ["rows"]
  })json");
  s["graph"] = OrderedJson::parse(R"json({
    "type": "object",
    "properties": {
      "vertices": {"type": "array", "items": "name"},
      "edges": {"type": "array", "items": {"type": "object",
        "properties": {"name": "string", "source": "vertex", "range": "vertex"}}}
    },
    "required": ["vertices", "edges"]
  })json");
  s["substitution"] = OrderedJson::parse(R"json({
    "type": "array",
    "items": {"type": "object", "properties": {
      "vertex": "vertex being substituted",
      "terms": {"type": "array", "items": {"type": "object", "properties": {
        "sign": "1, -1, \"+\" or \"-\"",
        "kind": {"enum": ["vertex", "edge_range"]},
        "name": "vertex name, or edge name for edge_range"}}}}},
    "description": "vertices without an entry map to themselves"
  })json");
  s["report"] = OrderedJson::parse(R"json({
    "type": "object",
    "properties": {
      "status": {"enum": ["ok", "violation", "error"]},
      "notes": {"type": "array", "items": "human-readable summary line"},
      "payload": "subcommand-specific result; every floating-point leaf is wrapped as {value, tail_bound, rigorous} or {value, exact}",
      "witness": "present exactly when status is violation: the failing object",
      "provenance": "per computed quantity: what the number means and how it is defined"
    }
  })json");
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "crystalkit: crystal data, boundary characters, partition functions, "
      "equilibrium values, and module invariants of scaled semigroups"};
  app.require_subcommand(0, 1);
  bool emit_schema = false;
  app.add_flag("--emit-schema", emit_schema,
               "print the JSON input/output schemas and exit");

  std::string json_path;
  std::string family;
  std::string weights;

  // crystal
  auto* crystal = app.add_subcommand(
      "crystal",
      "crystal sub-semigroup, boundary characters, and groupoid certificates");
  std::string table_path;
  std::string builtin_name;
  std::string value_bound_text = "6/1";
  std::size_t size_bound = 6;
  crystal->add_option("--table", table_path, "Cayley-table JSON file");
  crystal->add_option("--name", builtin_name,
                      "built-in catalog entry (e.g. b2_lambda2)");
  crystal->add_option("--family", family, "free | abelian | axb");
  crystal->add_option("--weights", weights, "comma-separated rationals");
  crystal->add_option("--value-bound", value_bound_text,
                      "component value bound for the hull certificate");
  crystal->add_option("--size-bound", size_bound,
                      "component size bound for the hull certificate");
  crystal->add_option("--json", json_path, "also write the report here");

  // zeta
  auto* zeta_cmd = app.add_subcommand(
      "zeta", "partition function: partial sums, tails, thresholds");
  double beta = 0.0;
  std::string cutoff_text = "1024/1";
  bool with_threshold = false;
  zeta_cmd->add_option("--family", family, "free | abelian | axb")->required();
  zeta_cmd->add_option("--weights", weights, "comma-separated rationals");
  zeta_cmd->add_option("--beta", beta, "inverse temperature")->required();
  zeta_cmd->add_option("--cutoff", cutoff_text, "class value cutoff p/q");
  zeta_cmd->add_flag("--threshold", with_threshold,
                     "also solve zeta(beta) = 2");
  zeta_cmd->add_option("--json", json_path, "also write the report here");

  // kms
  auto* kms_cmd = app.add_subcommand(
      "kms", "equilibrium-state value of a spanning element, or a sampled "
             "equilibrium-condition check");
  std::string query_path;
  bool check = false;
  std::size_t samples = 100;
  std::uint64_t seed = 7;
  kms_cmd->add_option("--family", family, "free | abelian | axb")->required();
  kms_cmd->add_option("--weights", weights, "comma-separated rationals");
  kms_cmd->add_option("--query", query_path, "query JSON file")->required();
  kms_cmd->add_flag("--check", check, "sampled equilibrium-condition check");
  kms_cmd->add_option("--samples", samples, "pairs to sample with --check");
  kms_cmd->add_option("--seed", seed, "sampling seed with --check");
  kms_cmd->add_option("--json", json_path, "also write the report here");

  // ground
  auto* ground_cmd = app.add_subcommand(
      "ground", "zero-temperature value of a spanning element");
  ground_cmd->add_option("--family", family, "free | abelian | axb")
      ->required();
  ground_cmd->add_option("--weights", weights, "comma-separated rationals");
  ground_cmd->add_option("--query", query_path, "query JSON file")->required();
  ground_cmd->add_option("--json", json_path, "also write the report here");

  // ktheory
  auto* kt_cmd = app.add_subcommand(
      "ktheory", "integer and polynomial Smith forms, module quotients, "
                 "graph class matrices, shift-model cokernels");
  std::string op;
  std::string matrix_path;
  std::string module_path;
  std::string graph_path;
  std::string substitution_path;
  std::size_t cycle = 0;
  std::size_t truncation = 0;
  kt_cmd->add_option("--op", op,
                     "snf | cokernel | quotients | smith-poly | circle | "
                     "graph | dynam")
      ->required();
  kt_cmd->add_option("--matrix", matrix_path, "integer matrix JSON file");
  kt_cmd->add_option("--module", module_path, "module presentation JSON file");
  kt_cmd->add_option("--graph", graph_path, "graph JSON file");
  kt_cmd->add_option("--substitution", substitution_path,
                     "substitution JSON file");
  kt_cmd->add_option("--cycle", cycle, "cycle length for --op dynam");
  kt_cmd->add_option("--truncation", truncation,
                     "truncation level for --op dynam (default 4*cycle)");
  kt_cmd->add_option("--json", json_path, "also write the report here");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "run every certificate and property suite");
  std::string suite = "all";
  std::uint64_t verify_seed = 7;
  std::string catalog_dir;
  verify_cmd->add_option("--suite", suite, "which suite to run (all)");
  verify_cmd->add_option("--seed", verify_seed, "deterministic sampling seed");
  verify_cmd->add_option("--catalog", catalog_dir,
                         "directory of Cayley-table JSON files replacing the "
                         "built-in catalog");
  verify_cmd->add_option("--json", json_path, "also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    Report err = ck::error_report(std::string("argument error: ") + e.what());
    std::cout << err.to_text();
    return err.exit_code();
  }

  if (emit_schema) {
    std::cout << schemas().dump(2) << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    Report err = ck::error_report(
        "no subcommand given (crystal, zeta, kms, ground, ktheory, verify); "
        "see --help");
    std::cout << err.to_text();
    return err.exit_code();
  }

  Report report;
  try {
    if (crystal->parsed()) {
      const int sources = (!table_path.empty()) + (!builtin_name.empty()) +
                          (!family.empty());
      if (sources != 1)
        ck::fail(ck::ErrorCode::Parse,
                 "crystal needs exactly one of --table, --name, --family");
      if (!table_path.empty()) {
        ck::CayleyData data =
            ck::cayley_from_json(ck::load_json_file(table_path));
        report = run_crystal_finite(data.semigroup, data.scale, table_path);
      } else if (!builtin_name.empty()) {
        ck::CatalogEntry entry = ck::catalog_entry(builtin_name);
        report = run_crystal_finite(entry.semigroup, entry.scale,
                                    "builtin:" + entry.name);
      } else {
        report = run_crystal_hull(monoid_from_flags(family, weights),
                                  ck::parse_rational(value_bound_text),
                                  size_bound);
      }
    } else if (zeta_cmd->parsed()) {
      report = run_zeta(monoid_from_flags(family, weights), beta,
                        ck::parse_rational(cutoff_text), with_threshold);
    } else if (kms_cmd->parsed()) {
      ck::ScaledMonoid monoid = monoid_from_flags(family, weights);
      ck::KmsQuery query =
          ck::kms_query_from_json(monoid, ck::load_json_file(query_path));
      report = run_kms(monoid, query, check, samples, seed);
    } else if (ground_cmd->parsed()) {
      ck::ScaledMonoid monoid = monoid_from_flags(family, weights);
      ck::KmsQuery query =
          ck::kms_query_from_json(monoid, ck::load_json_file(query_path));
      report = run_ground(monoid, query);
    } else if (kt_cmd->parsed()) {
      report = run_ktheory(op, matrix_path, module_path, graph_path,
                           substitution_path, cycle, truncation);
    } else if (verify_cmd->parsed()) {
      if (suite != "all")
        ck::fail(ck::ErrorCode::Parse,
                 "unknown --suite \"" + suite + "\" (only: all)");
      ck::VerifyOptions options;
      options.seed = verify_seed;
      if (!catalog_dir.empty()) options.catalog_dir = catalog_dir;
      report = ck::verify_suite(options);
    }
  } catch (const ck::Error& e) {
    report = ck::error_report(std::string(ck::error_code_name(e.code())) +
                              ": " + e.what());
  } catch (const std::exception& e) {
    report = ck::error_report(e.what());
  }

  std::cout << report.to_text();
  if (!json_path.empty()) {
    try {
      ck::write_report_file(report, json_path);
    } catch (const ck::Error& e) {
      Report err = ck::error_report(e.what());
      std::cout << err.to_text();
      return err.exit_code();
    }
  }
  return report.exit_code();
}
