#pragma once

#include <string>
#include <vector>

#include "crystalkit/poly.hpp"
#include "crystalkit/snf.hpp"

namespace crystalkit {

// Matrix with rational-polynomial entries, row-major.
struct PolyMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<RatPoly> data;

  static PolyMatrix zero(std::size_t r, std::size_t c) {
    return PolyMatrix{r, c, std::vector<RatPoly>(r * c)};
  }
  RatPoly& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const RatPoly& at(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }
};

// Presentation of a module over integer polynomials in t: the module is
// ℤ[t]^generators / (row span of relations).
struct ModulePresentation {
  std::size_t generators = 0;
  std::vector<std::vector<IntPoly>> relations;  // each row has `generators` entries
};

// Smith form over rational polynomials (a Euclidean domain): the invariant
// factors f1 | f2 | ..., monic (zeros trailing), min(rows, cols) entries.
std::vector<RatPoly> qt_smith(const PolyMatrix& p);

struct ZtQuotients {
  AbelianInvariants at_t_equals_0;  // M/tM: relations evaluated at t=0
  AbelianInvariants at_t_equals_1;  // M/(1-t)M: relations evaluated at t=1
};

ZtQuotients zt_quotients(const ModulePresentation& p);

struct CircleTheoremReport {
  bool hypothesis_fg = true;         // presented modules are finitely generated
  bool hypothesis_t_regular = true;  // every nonzero factor f has f(0), f(1) != 0
  std::size_t dim_m_mod_one_minus_t = 0;  // dim over the rationals at t=1
  std::size_t dim_m_mod_t = 0;            // dim over the rationals at t=0
  bool isomorphic = false;                // the two dimensions agree
  std::vector<RatPoly> invariant_factors;  // padded with zeros to `generators`
};

// Checks the rational-isomorphism criterion for the action encoded by t:
// when t acts with zero kernel and no nonzero fixed vectors (equivalently no
// invariant factor vanishing at 0 or 1), the two quotients M/(1-t)M and M/tM
// have equal dimension (the number of zero invariant factors).
CircleTheoremReport circle_theorem_check(const ModulePresentation& p);

struct GraphEdge {
  std::string name;
  std::string source;
  std::string range;
};

struct Graph {
  std::vector<std::string> vertices;
  std::vector<GraphEdge> edges;
};

struct SubstitutionTerm {
  int sign = 1;            // +1 or -1
  bool edge_range = false;  // false: vertex projection q_v; true: t_h t_h*
  std::string name;         // vertex name or edge name
};

struct VertexImage {
  std::string vertex;
  std::vector<SubstitutionTerm> terms;
};

// A substitution on vertex projections; vertices without an entry map to
// themselves.
struct Substitution {
  std::vector<VertexImage> images;
};

// The induced endomorphism of ℤ^V in the basis of vertex projection classes,
// using [t_h t_h*] = [q_{source(h)}]; column j is the image of vertex j.
IntMatrix graph_substitution_matrix(const Graph& g, const Substitution& s);

// Class-level composition: outer applied after inner. The matrix of the
// result equals the product matrix(outer) * matrix(inner).
Substitution compose_substitutions(const Graph& g, const Substitution& outer,
                                   const Substitution& inner);

struct DynamCokernels {
  AbelianInvariants coker_one_minus_t;
  AbelianInvariants coker_t;
};

// Finite-rank model of the integer-valued functions on a one-sided orbit
// falling onto an m-cycle: generators d_0..d_{T-1} (tail-zero part) and
// h_0..h_{m-1} (eventually periodic lifts), with t acting as the shift with
// zero fill. Returns the integer cokernels of (1-t) and t on this model.
DynamCokernels dynam_cokernels(std::size_t m, std::size_t truncation);

// The same model as a module presentation over integer polynomials:
// generators (delta_0, h_0..h_{m-1}) with relations t*h_i = h_{(i+1) mod m}
// and t^T * delta_0 = h_{T mod m}.
ModulePresentation dynam_presentation(std::size_t m, std::size_t truncation);

}  // namespace crystalkit
