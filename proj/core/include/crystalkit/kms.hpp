#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crystalkit/hull.hpp"
#include "crystalkit/monoid.hpp"

namespace crystalkit {

// v_s v_t^* (s = a, t = b), or zero. Same normal form as a hull element: the
// spanning elements multiply by the hull composition rule.
using SpanningElement = HullElement;

SpanningElement spanning_element(const ScaledMonoid& monoid,
                                 const MonoidElement& s,
                                 const MonoidElement& t);
SpanningElement spanning_zero();
// v_s v_t^* . v_u v_v^* = v_{sa} v_{vb}^* where tS n uS = rS, r = ta = ub;
// zero when the ideals are disjoint.
SpanningElement spanning_product(const ScaledMonoid& monoid,
                                 const SpanningElement& x,
                                 const SpanningElement& y);
// Adjoint swaps the pair: (v_s v_t^*)^* = v_t v_s^*.
SpanningElement spanning_adjoint(const ScaledMonoid& monoid,
                                 const SpanningElement& x);

// Finite mixture sum_i w_i . chi_{theta_i} of characters of the free abelian
// group generated by ker N. Weights are positive rationals summing to one
// exactly; each angle vector lists one angle in turns per kernel generator,
// so character i sends a kernel element with exponent vector m to
// exp(2 pi i <theta_i, m>). Families with nonabelian kernel are rejected.
struct TraceSpec {
  std::vector<mpq_class> weights;
  std::vector<std::vector<mpq_class>> angles;  // canonicalized into [0, 1)
};

TraceSpec trace_spec(const ScaledMonoid& monoid,
                     std::vector<mpq_class> weights,
                     std::vector<std::vector<mpq_class>> angles);

// tau(v_q v_p^*) = sum_i w_i exp(2 pi i <theta_i, exp(q) - exp(p)>).
// Both arguments must lie in ker N.
std::complex<double> trace_eval(const ScaledMonoid& monoid,
                                const TraceSpec& trace, const MonoidElement& q,
                                const MonoidElement& p);

// zeta_N(beta) = sum over scale-equivalence classes of N^{-beta}.
struct ZetaResult {
  double partial = 0.0;     // sum over classes with value <= cutoff
  mpz_class classes_used;   // number of classes in the partial sum
  std::optional<double> closed_form;  // when the family admits one
  std::optional<double> tail_bound;   // bound on (full - partial)
  bool tail_rigorous = false;
  bool divergent = false;  // full series is infinite at this beta
  double abscissa = 0.0;   // convergence abscissa (+inf if never finite)
};

// Requires beta > 0 and cutoff >= 1. Throws Divergent when already the
// partial sum has infinitely many classes below the cutoff (free monoids
// mixing weight-one and heavier generators).
ZetaResult zeta(const ScaledMonoid& monoid, double beta,
                const mpq_class& cutoff);

// The partial sum grouped by scale value: sum_v c(v) . v^{-beta} with c(v)
// the number of classes of value v. Agrees bit-for-bit with zeta().partial.
struct PartitionBlock {
  mpq_class value;
  mpz_class count;
};
struct PartitionSum {
  std::vector<PartitionBlock> blocks;  // ascending value
  double value = 0.0;
};
PartitionSum class_counting_partition(const ScaledMonoid& monoid, double beta,
                                      const mpq_class& cutoff);

// Solves zeta_N(beta) = 2 (the uniqueness threshold) and reports the
// convergence abscissa. `exact` marks the algebraic (non-bisection) path.
struct ThresholdReport {
  double beta_star = 0.0;
  double abscissa = 0.0;
  bool exact = false;
};
ThresholdReport beta_threshold(const ScaledMonoid& monoid);

// phi_{beta,tau}(v_s v_t^*) =
//   zeta_N(beta)^{-1} sum_{[r], N(r) <= cutoff, sr ~ tr} N(sr)^{-beta}
//   tau(v_{q_r} v_{p_r}^*)  with  s r p_r = t r q_r,  p_r, q_r in ker N,
// normalized by the partial zeta over the same classes so that phi(1) = 1
// exactly. The value is assembled as sum_i w_i . (numerator_i / zeta), one
// term per character, which makes the state affine in the trace bit-for-bit
// when the components are single characters.
struct KmsResult {
  std::complex<double> value{0.0, 0.0};
  double zeta_partial = 0.0;
  double tail_allowance = 0.0;  // bound on |true value - reported value|
  bool tail_rigorous = false;
  mpz_class classes_used;
};

KmsResult kms_value(const ScaledMonoid& monoid, double beta,
                    const TraceSpec& trace, const SpanningElement& x,
                    const mpq_class& cutoff);

// Ground state: tau(v_s v_t^*) when both s and t lie in ker N, else 0.
std::complex<double> ground_value(const ScaledMonoid& monoid,
                                  const TraceSpec& trace,
                                  const SpanningElement& x);

// Samples random spanning pairs (x, y) and checks the KMS_beta identity
// phi(y x) = (N(s)/N(t))^{-beta} phi(x y) for y = v_s v_t^*, residual by
// residual against the truncation allowance of the two evaluations.
struct KmsConditionReport {
  double max_residual = 0.0;
  double max_allowance = 0.0;
  bool pass = true;
  bool tail_rigorous = true;
  std::size_t samples = 0;
  std::string worst_pair;  // rendering of the pair with the largest residual
};

KmsConditionReport kms_condition_check(const ScaledMonoid& monoid, double beta,
                                       const TraceSpec& trace,
                                       std::size_t samples,
                                       const mpq_class& cutoff,
                                       std::uint64_t seed);

}  // namespace crystalkit
