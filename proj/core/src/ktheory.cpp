#include "crystalkit/ktheory.hpp"

#include <algorithm>
#include <map>

#include "crystalkit/error.hpp"

namespace crystalkit {

namespace {

void poly_add_row(PolyMatrix& m, std::size_t dst, std::size_t src,
                  const RatPoly& factor) {
  for (std::size_t j = 0; j < m.cols; ++j) {
    m.at(dst, j) = poly_add(m.at(dst, j), poly_mul(factor, m.at(src, j)));
  }
}

void poly_add_col(PolyMatrix& m, std::size_t dst, std::size_t src,
                  const RatPoly& factor) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    m.at(i, dst) = poly_add(m.at(i, dst), poly_mul(factor, m.at(i, src)));
  }
}

}  // namespace

std::vector<RatPoly> qt_smith(const PolyMatrix& p) {
  PolyMatrix d = p;
  const std::size_t limit = std::min(d.rows, d.cols);
  std::size_t rank = 0;

  for (std::size_t t = 0; t < limit; ++t) {
    bool have_pivot = true;
    for (;;) {
      // Smallest-degree nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = t, pj = t;
      long best = -1;
      for (std::size_t i = t; i < d.rows; ++i) {
        for (std::size_t j = t; j < d.cols; ++j) {
          if (d.at(i, j).is_zero()) continue;
          long deg = d.at(i, j).degree();
          if (best < 0 || deg < best) {
            best = deg;
            pi = i;
            pj = j;
          }
        }
      }
      if (best < 0) {
        have_pivot = false;
        break;
      }
      if (pi != t) {
        for (std::size_t j = 0; j < d.cols; ++j) std::swap(d.at(t, j), d.at(pi, j));
      }
      if (pj != t) {
        for (std::size_t i = 0; i < d.rows; ++i) std::swap(d.at(i, t), d.at(i, pj));
      }

      bool dirty = false;
      for (std::size_t i = t + 1; i < d.rows; ++i) {
        if (d.at(i, t).is_zero()) continue;
        auto [q, r] = poly_divmod(d.at(i, t), d.at(t, t));
        if (!q.is_zero()) poly_add_row(d, i, t, poly_scale(q, mpq_class(-1)));
        d.at(i, t) = r;  // division guarantees this exact remainder
        if (!r.is_zero()) dirty = true;
      }
      for (std::size_t j = t + 1; j < d.cols; ++j) {
        if (d.at(t, j).is_zero()) continue;
        auto [q, r] = poly_divmod(d.at(t, j), d.at(t, t));
        if (!q.is_zero()) poly_add_col(d, j, t, poly_scale(q, mpq_class(-1)));
        d.at(t, j) = r;
        if (!r.is_zero()) dirty = true;
      }
      if (dirty) continue;

      bool fixed = false;
      for (std::size_t i = t + 1; i < d.rows && !fixed; ++i) {
        for (std::size_t j = t + 1; j < d.cols && !fixed; ++j) {
          if (!poly_divmod(d.at(i, j), d.at(t, t)).second.is_zero()) {
            poly_add_row(d, t, i, RatPoly::constant(1));
            fixed = true;
          }
        }
      }
      if (fixed) continue;
      break;
    }
    if (!have_pivot) break;
    rank = t + 1;
  }

  std::vector<RatPoly> factors;
  factors.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) {
    factors.push_back(i < rank ? poly_monic(d.at(i, i)) : RatPoly{});
  }
  return factors;
}

namespace {

IntMatrix evaluate_relations(const ModulePresentation& p, const mpz_class& x) {
  IntMatrix m = IntMatrix::zero(p.relations.size(), p.generators);
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    if (p.relations[i].size() != p.generators) {
      fail(ErrorCode::Invalid, "relation row width differs from generator count");
    }
    for (std::size_t j = 0; j < p.generators; ++j) {
      m.at(i, j) = p.relations[i][j].eval(x);
    }
  }
  return m;
}

PolyMatrix presentation_matrix(const ModulePresentation& p) {
  PolyMatrix m = PolyMatrix::zero(p.relations.size(), p.generators);
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    if (p.relations[i].size() != p.generators) {
      fail(ErrorCode::Invalid, "relation row width differs from generator count");
    }
    for (std::size_t j = 0; j < p.generators; ++j) {
      m.at(i, j) = RatPoly::from_int(p.relations[i][j]);
    }
  }
  return m;
}

}  // namespace

ZtQuotients zt_quotients(const ModulePresentation& p) {
  ZtQuotients q;
  q.at_t_equals_0 = cokernel(evaluate_relations(p, 0));
  q.at_t_equals_1 = cokernel(evaluate_relations(p, 1));
  return q;
}

CircleTheoremReport circle_theorem_check(const ModulePresentation& p) {
  CircleTheoremReport report;
  report.hypothesis_fg = true;

  PolyMatrix m = presentation_matrix(p);
  std::vector<RatPoly> factors = qt_smith(m);
  while (factors.size() < p.generators) factors.push_back(RatPoly{});
  report.invariant_factors = factors;

  for (const RatPoly& f : factors) {
    if (f.is_zero()) continue;
    if (f.eval(0) == 0 || f.eval(1) == 0) report.hypothesis_t_regular = false;
  }

  // Dimensions over the rationals of the two quotient spaces, computed
  // unconditionally from the integer evaluations.
  SmithDecomposition at0 = smith_normal_form(evaluate_relations(p, 0));
  SmithDecomposition at1 = smith_normal_form(evaluate_relations(p, 1));
  report.dim_m_mod_t = p.generators - at0.rank;
  report.dim_m_mod_one_minus_t = p.generators - at1.rank;
  report.isomorphic = report.dim_m_mod_t == report.dim_m_mod_one_minus_t;
  return report;
}

namespace {

std::size_t vertex_index(const Graph& g, const std::string& name) {
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    if (g.vertices[i] == name) return i;
  }
  fail(ErrorCode::Invalid, "unknown vertex name: " + name);
}

const GraphEdge& edge_by_name(const Graph& g, const std::string& name) {
  for (const GraphEdge& e : g.edges) {
    if (e.name == name) return e;
  }
  fail(ErrorCode::Invalid, "unknown edge name: " + name);
}

// Class of a substitution term in the vertex-projection basis: a vertex
// projection is itself; an edge range projection t_h t_h* is equivalent to
// the source vertex projection.
std::size_t term_class_index(const Graph& g, const SubstitutionTerm& term) {
  if (term.edge_range) {
    return vertex_index(g, edge_by_name(g, term.name).source);
  }
  return vertex_index(g, term.name);
}

}  // namespace

IntMatrix graph_substitution_matrix(const Graph& g, const Substitution& s) {
  const std::size_t n = g.vertices.size();
  IntMatrix m = IntMatrix::zero(n, n);
  std::vector<bool> listed(n, false);
  for (const VertexImage& image : s.images) {
    std::size_t col = vertex_index(g, image.vertex);
    if (listed[col]) {
      fail(ErrorCode::Invalid, "vertex listed twice: " + image.vertex);
    }
    listed[col] = true;
    for (const SubstitutionTerm& term : image.terms) {
      if (term.sign != 1 && term.sign != -1) {
        fail(ErrorCode::Invalid, "term sign must be +1 or -1");
      }
      m.at(term_class_index(g, term), col) += term.sign;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!listed[j]) m.at(j, j) = 1;
  }
  return m;
}

Substitution compose_substitutions(const Graph& g, const Substitution& outer,
                                   const Substitution& inner) {
  // Expand every image through the outer substitution at the level of
  // vertex-projection classes.
  std::map<std::string, const std::vector<SubstitutionTerm>*> outer_map;
  for (const VertexImage& image : outer.images) {
    (void)vertex_index(g, image.vertex);
    outer_map[image.vertex] = &image.terms;
  }
  std::map<std::string, const std::vector<SubstitutionTerm>*> inner_map;
  for (const VertexImage& image : inner.images) {
    (void)vertex_index(g, image.vertex);
    inner_map[image.vertex] = &image.terms;
  }

  auto outer_terms_of = [&](const std::string& vertex, int sign,
                            std::vector<SubstitutionTerm>& out) {
    auto it = outer_map.find(vertex);
    if (it == outer_map.end()) {
      out.push_back(SubstitutionTerm{sign, false, vertex});
      return;
    }
    for (const SubstitutionTerm& term : *it->second) {
      out.push_back(SubstitutionTerm{sign * term.sign, term.edge_range,
                                     term.name});
    }
  };

  Substitution composed;
  for (const std::string& vertex : g.vertices) {
    VertexImage image;
    image.vertex = vertex;
    auto it = inner_map.find(vertex);
    if (it == inner_map.end()) {
      outer_terms_of(vertex, 1, image.terms);
    } else {
      for (const SubstitutionTerm& term : *it->second) {
        std::string cls = term.edge_range
                              ? edge_by_name(g, term.name).source
                              : term.name;
        (void)vertex_index(g, cls);
        outer_terms_of(cls, term.sign, image.terms);
      }
    }
    composed.images.push_back(std::move(image));
  }
  return composed;
}

ModulePresentation dynam_presentation(std::size_t m, std::size_t truncation) {
  if (m < 1) fail(ErrorCode::Invalid, "cycle length must be at least 1");
  if (truncation < m) {
    fail(ErrorCode::Invalid, "truncation must be at least the cycle length");
  }
  // Generators: index 0 = delta_0, indices 1..m = h_0..h_{m-1}.
  ModulePresentation p;
  p.generators = m + 1;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<IntPoly> row(p.generators);
    row[1 + i] = ipoly_add(row[1 + i], IntPoly::monomial(1, 1));  // t*h_i
    std::size_t next = (i + 1) % m;
    row[1 + next] = ipoly_sub(row[1 + next], IntPoly::constant(1));
    p.relations.push_back(std::move(row));
  }
  std::vector<IntPoly> row(p.generators);
  row[0] = ipoly_add(row[0], IntPoly::monomial(1, truncation));  // t^T*delta_0
  row[1 + truncation % m] =
      ipoly_sub(row[1 + truncation % m], IntPoly::constant(1));
  p.relations.push_back(std::move(row));
  return p;
}

DynamCokernels dynam_cokernels(std::size_t m, std::size_t truncation) {
  if (m < 1) fail(ErrorCode::Invalid, "cycle length must be at least 1");
  if (truncation < m) {
    fail(ErrorCode::Invalid, "truncation must be at least the cycle length");
  }
  const std::size_t n = truncation + m;
  // Basis: d_0..d_{T-1} then h_0..h_{m-1}. The shift sends d_j to d_{j+1},
  // d_{T-1} into the periodic tail at slot T mod m, and rotates the h's.
  auto shift_image = [&](std::size_t k) {
    std::vector<mpz_class> row(n, 0);
    if (k < truncation) {
      if (k + 1 < truncation) {
        row[k + 1] = 1;
      } else {
        row[truncation + (truncation % m)] = 1;
      }
    } else {
      std::size_t i = k - truncation;
      row[truncation + (i + 1) % m] = 1;
    }
    return row;
  };

  IntMatrix one_minus_t = IntMatrix::zero(n, n);
  IntMatrix t_map = IntMatrix::zero(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<mpz_class> image = shift_image(k);
    for (std::size_t j = 0; j < n; ++j) {
      t_map.at(k, j) = image[j];
      one_minus_t.at(k, j) = (k == j ? 1 : 0) - image[j];
    }
  }

  DynamCokernels result;
  result.coker_one_minus_t = cokernel(one_minus_t);
  result.coker_t = cokernel(t_map);
  return result;
}

}  // namespace crystalkit
