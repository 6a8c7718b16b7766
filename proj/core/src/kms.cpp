#include "crystalkit/kms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "crystalkit/error.hpp"
#include "crystalkit/rational.hpp"

namespace crystalkit {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

mpz_class floor_mpq(const mpq_class& x) {
  mpz_class num = x.get_num(), den = x.get_den(), q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

// exp(2 pi i turns) with exact values at the quarter turns, so characters of
// order 1, 2, and 4 evaluate without rounding.
std::complex<double> unit_phase(const mpq_class& turns) {
  mpq_class t = turns - mpq_class(floor_mpq(turns));
  if (t == 0) return {1.0, 0.0};
  if (t == mpq_class(1, 2)) return {-1.0, 0.0};
  if (t == mpq_class(1, 4)) return {0.0, 1.0};
  if (t == mpq_class(3, 4)) return {0.0, -1.0};
  const double x = kTwoPi * t.get_d();
  return {std::cos(x), std::sin(x)};
}

std::complex<double> character_value(const std::vector<mpq_class>& theta,
                                     const std::vector<mpz_class>& m) {
  mpq_class phase = 0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    phase += theta[j] * mpq_class(m[j]);
  }
  return unit_phase(phase);
}

std::size_t weight_one_count(const ScaledMonoid& monoid) {
  std::size_t count = 0;
  for (const auto& w : monoid.weights()) {
    if (w == 1) ++count;
  }
  return count;
}

bool equal_weights(const std::vector<mpq_class>& weights) {
  for (const auto& w : weights) {
    if (w != weights.front()) return false;
  }
  return true;
}

// Riemann zeta via Euler-Maclaurin: the error of the correction below is
// O(s^3 A^{-s-3}), far below double rounding for s in (1, 64].
double riemann_zeta_em(double s) {
  constexpr int kBase = 10000;
  double sum = 0.0;
  for (int n = 1; n < kBase; ++n) sum += std::pow(static_cast<double>(n), -s);
  const double a = static_cast<double>(kBase);
  sum += std::pow(a, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(a, -s);
  sum += s / 12.0 * std::pow(a, -s - 1.0);
  return sum;
}

// Root of a strictly decreasing function with f(lo) > 0 > f(hi).
template <typename F>
double bisect_decreasing(F&& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Smallest k >= 1 with base^k == target, for base > 1. Lets thresholds that
// are exact integers come out bit-exact instead of through exp/log.
std::optional<double> integer_power_solve(const mpq_class& base,
                                          const mpq_class& target) {
  mpq_class acc = 1;
  for (int k = 1; k <= 64; ++k) {
    acc *= base;
    if (acc == target) return static_cast<double>(k);
    if (acc > target) break;
  }
  return std::nullopt;
}

double weight_power_sum(const ScaledMonoid& monoid, double beta,
                        bool skip_trivial) {
  double sum = 0.0;
  for (const auto& w : monoid.weights()) {
    if (skip_trivial && w == 1) continue;
    sum += pow_neg_beta(w, beta);
  }
  return sum;
}

// Least L with wmax^L > cutoff: every omitted class corresponds to a word
// (or exponent vector) of length >= L, giving the geometric tail bound.
int length_floor(const mpq_class& wmax, const mpq_class& cutoff) {
  mpq_class power = 1;
  int level = 0;
  while (power <= cutoff) {
    power *= wmax;
    ++level;
  }
  return level;
}

void require_trace(const ScaledMonoid& monoid, const TraceSpec& trace) {
  if (!monoid.kernel_abelian()) {
    fail(ErrorCode::NonAbelianKernel,
         "trace mixtures require an abelian kernel");
  }
  if (trace.weights.empty() || trace.weights.size() != trace.angles.size()) {
    fail(ErrorCode::Invalid, "trace weights and angle vectors must pair up");
  }
  const std::size_t rank = monoid.kernel_rank();
  mpq_class total = 0;
  for (std::size_t i = 0; i < trace.weights.size(); ++i) {
    if (trace.weights[i] <= 0) {
      fail(ErrorCode::Invalid, "trace weights must be positive");
    }
    if (trace.angles[i].size() != rank) {
      fail(ErrorCode::Invalid,
           "each angle vector must list one angle per kernel generator (" +
               std::to_string(rank) + " expected)");
    }
    total += trace.weights[i];
  }
  if (total != 1) {
    fail(ErrorCode::Invalid, "trace weights must sum to one exactly, got " +
                                 format_rational(total));
  }
}

std::vector<mpz_class> exponent_difference(const ScaledMonoid& monoid,
                                           const MonoidElement& q,
                                           const MonoidElement& p) {
  std::vector<mpz_class> mq = monoid.kernel_exponent(q);
  const std::vector<mpz_class> mp = monoid.kernel_exponent(p);
  for (std::size_t j = 0; j < mq.size(); ++j) mq[j] -= mp[j];
  return mq;
}

PartitionSum partition_sum_impl(const ScaledMonoid& monoid, double beta,
                                const mpq_class& cutoff) {
  if (!(beta > 0.0)) fail(ErrorCode::Invalid, "beta must be positive");
  if (cutoff < 1) fail(ErrorCode::Invalid, "cutoff must be at least 1");
  PartitionSum out;
  const auto counts = monoid.class_value_counts(cutoff);
  out.blocks.reserve(counts.size());
  double acc = 0.0;
  for (const auto& vc : counts) {
    out.blocks.push_back({vc.value, vc.count});
    acc += vc.count.get_d() * pow_neg_beta(vc.value, beta);
  }
  out.value = acc;
  return out;
}

}  // namespace

SpanningElement spanning_element(const ScaledMonoid& monoid,
                                 const MonoidElement& s,
                                 const MonoidElement& t) {
  return InverseHull(monoid).element(s, t);
}

SpanningElement spanning_zero() { return SpanningElement{}; }

SpanningElement spanning_product(const ScaledMonoid& monoid,
                                 const SpanningElement& x,
                                 const SpanningElement& y) {
  return InverseHull(monoid).compose(x, y);
}

SpanningElement spanning_adjoint(const ScaledMonoid& monoid,
                                 const SpanningElement& x) {
  return InverseHull(monoid).inverse(x);
}

TraceSpec trace_spec(const ScaledMonoid& monoid,
                     std::vector<mpq_class> weights,
                     std::vector<std::vector<mpq_class>> angles) {
  TraceSpec trace{std::move(weights), std::move(angles)};
  require_trace(monoid, trace);
  for (auto& theta : trace.angles) {
    for (auto& turn : theta) turn -= mpq_class(floor_mpq(turn));
  }
  return trace;
}

std::complex<double> trace_eval(const ScaledMonoid& monoid,
                                const TraceSpec& trace, const MonoidElement& q,
                                const MonoidElement& p) {
  require_trace(monoid, trace);
  if (!monoid.kernel_member(q) || !monoid.kernel_member(p)) {
    fail(ErrorCode::NonKernel, "trace arguments must lie in ker N");
  }
  const std::vector<mpz_class> m = exponent_difference(monoid, q, p);
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t i = 0; i < trace.weights.size(); ++i) {
    sum += trace.weights[i].get_d() * character_value(trace.angles[i], m);
  }
  return sum;
}

ZetaResult zeta(const ScaledMonoid& monoid, double beta,
                const mpq_class& cutoff) {
  const PartitionSum partial = partition_sum_impl(monoid, beta, cutoff);
  ZetaResult out;
  out.partial = partial.value;
  out.classes_used = 0;
  for (const auto& block : partial.blocks) out.classes_used += block.count;
  switch (monoid.kind()) {
    case FamilyKind::Free: {
      const std::size_t trivial = weight_one_count(monoid);
      const std::size_t n = monoid.generator_count();
      if (trivial == n) {
        out.closed_form = 1.0;
        out.tail_bound = 0.0;
        out.tail_rigorous = true;
        out.abscissa = 0.0;
        break;
      }
      if (trivial > 0) {
        // Weight-one and heavier generators together: infinitely many
        // classes at every value above the smallest heavy weight.
        out.divergent = true;
        out.abscissa = std::numeric_limits<double>::infinity();
        break;
      }
      const double s = weight_power_sum(monoid, beta, false);
      if (equal_weights(monoid.weights())) {
        const mpq_class w = monoid.weights().front();
        const auto exact = integer_power_solve(w, mpq_class(n));
        out.abscissa = exact ? *exact
                             : std::log2(static_cast<double>(n)) /
                                   std::log2(w.get_d());
      } else {
        out.abscissa = bisect_decreasing(
            [&](double b) { return weight_power_sum(monoid, b, false) - 1.0; },
            1e-9, 4096.0);
      }
      if (s < 1.0) {
        out.closed_form = 1.0 / (1.0 - s);
        mpq_class wmax = monoid.weights().front();
        for (const auto& w : monoid.weights()) wmax = std::max(wmax, w);
        out.tail_bound = std::pow(s, length_floor(wmax, cutoff)) / (1.0 - s);
        out.tail_rigorous = true;
      } else {
        out.divergent = true;
      }
      break;
    }
    case FamilyKind::Abelian: {
      out.abscissa = 0.0;
      std::vector<mpq_class> heavy;
      for (const auto& w : monoid.weights()) {
        if (w > 1) heavy.push_back(w);
      }
      if (heavy.empty()) {
        out.closed_form = 1.0;
        out.tail_bound = 0.0;
        out.tail_rigorous = true;
        break;
      }
      double closed = 1.0;
      for (const auto& w : heavy) closed /= 1.0 - pow_neg_beta(w, beta);
      out.closed_form = closed;
      const double s = weight_power_sum(monoid, beta, true);
      if (s < 1.0) {
        mpq_class wmax = heavy.front();
        for (const auto& w : heavy) wmax = std::max(wmax, w);
        out.tail_bound = std::pow(s, length_floor(wmax, cutoff)) / (1.0 - s);
        out.tail_rigorous = true;
      } else {
        // Convergent (the closed form is finite), but the geometric bound
        // does not apply: report the closed-form gap as a tail estimate.
        out.tail_bound = std::max(closed - partial.value, 0.0);
        out.tail_rigorous = false;
      }
      break;
    }
    case FamilyKind::Affine: {
      out.abscissa = 2.0;
      if (beta > 2.0) {
        out.closed_form = riemann_zeta_em(beta - 1.0);
        const double a = floor_mpq(cutoff).get_d();
        out.tail_bound = std::pow(a, 2.0 - beta) / (beta - 2.0);
        out.tail_rigorous = true;
      } else {
        out.divergent = true;
      }
      break;
    }
  }
  return out;
}

PartitionSum class_counting_partition(const ScaledMonoid& monoid, double beta,
                                      const mpq_class& cutoff) {
  return partition_sum_impl(monoid, beta, cutoff);
}

ThresholdReport beta_threshold(const ScaledMonoid& monoid) {
  ThresholdReport report;
  switch (monoid.kind()) {
    case FamilyKind::Free: {
      const std::size_t trivial = weight_one_count(monoid);
      const std::size_t n = monoid.generator_count();
      if (trivial == n) {
        fail(ErrorCode::Invalid,
             "the partition function is identically one and never reaches 2");
      }
      if (trivial > 0) {
        fail(ErrorCode::Divergent,
             "the partition function diverges at every inverse temperature");
      }
      if (equal_weights(monoid.weights())) {
        const mpq_class w = monoid.weights().front();
        const auto abscissa = integer_power_solve(w, mpq_class(n));
        report.abscissa = abscissa ? *abscissa
                                   : std::log2(static_cast<double>(n)) /
                                         std::log2(w.get_d());
        const auto star = integer_power_solve(w, mpq_class(2 * n));
        if (star) {
          report.beta_star = *star;
          report.exact = true;
        } else {
          report.beta_star = std::log2(2.0 * static_cast<double>(n)) /
                             std::log2(w.get_d());
          report.exact = true;  // algebraic solve of n w^{-beta} = 1/2
        }
      } else {
        report.abscissa = bisect_decreasing(
            [&](double b) { return weight_power_sum(monoid, b, false) - 1.0; },
            1e-9, 4096.0);
        report.beta_star = bisect_decreasing(
            [&](double b) { return weight_power_sum(monoid, b, false) - 0.5; },
            1e-9, 4096.0);
      }
      break;
    }
    case FamilyKind::Abelian: {
      std::vector<mpq_class> heavy;
      for (const auto& w : monoid.weights()) {
        if (w > 1) heavy.push_back(w);
      }
      if (heavy.empty()) {
        fail(ErrorCode::Invalid,
             "the partition function is identically one and never reaches 2");
      }
      report.abscissa = 0.0;
      bool same = true;
      for (const auto& w : heavy) same = same && w == heavy.front();
      if (same) {
        const mpq_class w = heavy.front();
        const std::size_t k = heavy.size();
        if (k == 1) {
          const auto star = integer_power_solve(w, mpq_class(2));
          report.beta_star =
              star ? *star : -std::log2(0.5) / std::log2(w.get_d());
          report.exact = true;
        } else {
          const double x = 1.0 - std::exp2(-1.0 / static_cast<double>(k));
          report.beta_star = -std::log2(x) / std::log2(w.get_d());
          report.exact = true;  // algebraic solve of (1 - w^{-beta})^{-k} = 2
        }
      } else {
        report.beta_star = bisect_decreasing(
            [&](double b) {
              double closed = 1.0;
              for (const auto& w : heavy) closed /= 1.0 - pow_neg_beta(w, b);
              return closed - 2.0;
            },
            1e-9, 4096.0);
      }
      break;
    }
    case FamilyKind::Affine: {
      report.abscissa = 2.0;
      report.beta_star = bisect_decreasing(
          [](double b) { return riemann_zeta_em(b - 1.0) - 2.0; },
          2.0 + 1e-9, 3.0);
      break;
    }
  }
  return report;
}

KmsResult kms_value(const ScaledMonoid& monoid, double beta,
                    const TraceSpec& trace, const SpanningElement& x,
                    const mpq_class& cutoff) {
  require_trace(monoid, trace);
  const ZetaResult z = zeta(monoid, beta, cutoff);
  if (z.divergent) {
    fail(ErrorCode::Divergent,
         "the partition function diverges at this inverse temperature");
  }
  KmsResult out;
  out.zeta_partial = z.partial;
  out.classes_used = z.classes_used;
  out.tail_rigorous = true;
  if (x.zero) return out;

  const MonoidElement& s = x.a;
  const MonoidElement& t = x.b;
  if (monoid.scale_value(s) != monoid.scale_value(t)) {
    // No class can satisfy sr ~ tr: the value is exactly zero.
    return out;
  }

  const double tail_z = z.tail_bound.value_or(0.0);
  const std::size_t characters = trace.weights.size();
  std::vector<std::complex<double>> numerators(characters, {0.0, 0.0});
  double numerator_tail = 0.0;
  bool rigorous = z.tail_rigorous;

  switch (monoid.kind()) {
    case FamilyKind::Free: {
      if (weight_one_count(monoid) == monoid.generator_count()) {
        // Everything has scale one: a single class, complete evaluation.
        const KernelPair pq = monoid.solve_pq(s, t);
        const std::vector<mpz_class> m =
            exponent_difference(monoid, pq.q, pq.p);
        for (std::size_t i = 0; i < characters; ++i) {
          numerators[i] = character_value(trace.angles[i], m) * z.partial;
        }
        break;
      }
      // Trivial kernel: sr ~ tr forces s = t, and then every class
      // contributes N(s)^{-beta} N(r)^{-beta} tau(1).
      if (s == t) {
        const double base = pow_neg_beta(monoid.scale_value(s), beta);
        for (std::size_t i = 0; i < characters; ++i) {
          numerators[i] = base * z.partial;
        }
        numerator_tail = base * tail_z;
      }
      break;
    }
    case FamilyKind::Abelian: {
      if (!monoid.equivalent_mod_kernel(s, t)) break;  // exact zero
      const KernelPair pq = monoid.solve_pq(s, t);
      const std::vector<mpz_class> m = exponent_difference(monoid, pq.q, pq.p);
      const double base = pow_neg_beta(monoid.scale_value(s), beta);
      for (std::size_t i = 0; i < characters; ++i) {
        numerators[i] = base * character_value(trace.angles[i], m) * z.partial;
      }
      numerator_tail = base * tail_z;
      break;
    }
    case FamilyKind::Affine: {
      const AffinePair& sa = s.affine();
      const AffinePair& ta = t.affine();
      const mpz_class a0 = sa.factor;  // = ta.factor (equal scales)
      if (sa.offset == ta.offset) {
        const double base = pow_neg_beta(mpq_class(a0), beta);
        for (std::size_t i = 0; i < characters; ++i) {
          numerators[i] = base * z.partial;
        }
        numerator_tail = base * tail_z;
        break;
      }
      const mpz_class diff = sa.offset - ta.offset;
      if (diff % a0 != 0) break;  // exact zero: a0 a | (u - v) is impossible
      const mpz_class d = diff / a0;
      const mpz_class mag = abs(d);
      const mpz_class amax = floor_mpq(cutoff);
      // Classes of value a (the a residues r = (b, a)) contribute iff
      // a | (u - v)/a0, each with kernel shift (u - v)/(a0 a).
      for (mpz_class a = 1; a <= amax && a <= mag; ++a) {
        if (mag % a != 0) continue;
        const double coeff =
            a.get_d() * pow_neg_beta(mpq_class(a0 * a), beta);
        const std::vector<mpz_class> m{d / a};
        for (std::size_t i = 0; i < characters; ++i) {
          numerators[i] += coeff * character_value(trace.angles[i], m);
        }
      }
      if (mag > amax) {
        numerator_tail = pow_neg_beta(mpq_class(a0), beta) * tail_z;
      }
      break;
    }
  }

  std::complex<double> value{0.0, 0.0};
  for (std::size_t i = 0; i < characters; ++i) {
    value += trace.weights[i].get_d() * (numerators[i] / z.partial);
  }
  out.value = value;
  out.tail_allowance =
      (numerator_tail + std::abs(value) * tail_z) / z.partial;
  out.tail_rigorous = rigorous;
  return out;
}

std::complex<double> ground_value(const ScaledMonoid& monoid,
                                  const TraceSpec& trace,
                                  const SpanningElement& x) {
  require_trace(monoid, trace);
  if (x.zero) return {0.0, 0.0};
  if (!monoid.kernel_member(x.a) || !monoid.kernel_member(x.b)) {
    return {0.0, 0.0};
  }
  return trace_eval(monoid, trace, x.a, x.b);
}

KmsConditionReport kms_condition_check(const ScaledMonoid& monoid, double beta,
                                       const TraceSpec& trace,
                                       std::size_t samples,
                                       const mpq_class& cutoff,
                                       std::uint64_t seed) {
  require_trace(monoid, trace);
  const InverseHull hull(monoid);
  KmsConditionReport report;
  report.samples = samples;

  const auto pool = monoid.enumerate_elements(8, 4);
  if (pool.empty()) fail(ErrorCode::Invalid, "empty sample pool");
  std::map<mpq_class, std::vector<std::size_t>> by_scale;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    by_scale[monoid.scale_value(pool[i])].push_back(i);
  }
  std::vector<std::vector<std::size_t>> groups;
  for (auto& [value, members] : by_scale) groups.push_back(members);

  std::mt19937_64 rng(seed);
  const auto pick = [&](const std::vector<std::size_t>& from) {
    return pool[from[rng() % from.size()]];
  };
  const auto sample_element = [&](bool same_scale) {
    if (same_scale) {
      const auto& group = groups[rng() % groups.size()];
      return hull.element(pick(group), pick(group));
    }
    std::vector<std::size_t> all(pool.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return hull.element(pick(all), pick(all));
  };

  for (std::size_t n = 0; n < samples; ++n) {
    const bool same_scale = (rng() & 1) != 0;
    const SpanningElement x = sample_element(same_scale);
    const SpanningElement y = sample_element(same_scale);
    const SpanningElement yx = hull.compose(y, x);
    const SpanningElement xy = hull.compose(x, y);
    const KmsResult f_yx = kms_value(monoid, beta, trace, yx, cutoff);
    const KmsResult f_xy = kms_value(monoid, beta, trace, xy, cutoff);
    const double factor = pow_neg_beta(
        monoid.scale_value(y.a) / monoid.scale_value(y.b), beta);
    const double residual = std::abs(f_yx.value - factor * f_xy.value);
    const double allowance =
        f_yx.tail_allowance + factor * f_xy.tail_allowance + 1e-9;
    report.tail_rigorous =
        report.tail_rigorous && f_yx.tail_rigorous && f_xy.tail_rigorous;
    if (residual > report.max_residual || report.worst_pair.empty()) {
      report.max_residual = std::max(report.max_residual, residual);
      report.worst_pair =
          "y=" + hull.to_string(y) + ", x=" + hull.to_string(x);
    }
    report.max_allowance = std::max(report.max_allowance, allowance);
    if (residual > allowance) report.pass = false;
  }
  return report;
}

}  // namespace crystalkit
