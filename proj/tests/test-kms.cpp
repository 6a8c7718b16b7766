#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include "crystalkit/error.hpp"
#include "crystalkit/kms.hpp"
#include "crystalkit/monoid.hpp"
#include "crystalkit/rational.hpp"

using namespace crystalkit;

namespace {

using Complex = std::complex<double>;

ScaledMonoid free22() { return ScaledMonoid::free_monoid({2, 2}); }
ScaledMonoid free23() { return ScaledMonoid::free_monoid({2, 3}); }
ScaledMonoid grid12() { return ScaledMonoid::abelian_monoid({1, 2}); }
ScaledMonoid axb() { return ScaledMonoid::affine_monoid(); }

TraceSpec point_trace(const ScaledMonoid& monoid,
                      const std::vector<mpq_class>& theta) {
  return trace_spec(monoid, {mpq_class(1)}, {theta});
}

// Direct evaluation of the defining sum over class representatives, with an
// optional kernel twist replacing each representative r by r * twist[k].
Complex brute_kms(const ScaledMonoid& monoid, double beta,
                  const TraceSpec& trace, const MonoidElement& s,
                  const MonoidElement& t, const mpq_class& cutoff,
                  const std::vector<MonoidElement>& twists = {}) {
  const auto reps = monoid.class_representatives(cutoff);
  double zeta_partial = 0.0;
  Complex numerator{0.0, 0.0};
  std::size_t k = 0;
  for (const auto& rep : reps) {
    MonoidElement r = rep.representative;
    if (!twists.empty()) {
      r = monoid.multiply(r, twists[k++ % twists.size()]);
    }
    zeta_partial += pow_neg_beta(rep.value, beta);
    const MonoidElement sr = monoid.multiply(s, r);
    const MonoidElement tr = monoid.multiply(t, r);
    if (!monoid.equivalent_mod_kernel(sr, tr)) continue;
    const KernelPair pq = monoid.solve_pq(sr, tr);
    numerator += pow_neg_beta(monoid.scale_value(sr), beta) *
                 trace_eval(monoid, trace, pq.q, pq.p);
  }
  return numerator / zeta_partial;
}

}  // namespace

TEST_CASE("spanning elements multiply by the ideal-intersection rule") {
  const ScaledMonoid fm = free22();
  const MonoidElement e = fm.identity();
  const MonoidElement a = fm.generator(0);
  const MonoidElement b = fm.generator(1);
  const MonoidElement ab = fm.multiply(a, b);
  const MonoidElement aab = fm.multiply(a, ab);

  // (a, e) . (ab, b) = (aab, b)
  CHECK(spanning_product(fm, spanning_element(fm, a, e),
                         spanning_element(fm, ab, b)) ==
        spanning_element(fm, aab, b));
  // (e, a) . (b, e) = 0: disjoint ideals
  CHECK(spanning_product(fm, spanning_element(fm, e, a),
                         spanning_element(fm, b, e)) == spanning_zero());
  CHECK(spanning_product(fm, spanning_zero(),
                         spanning_element(fm, a, e)) == spanning_zero());

  const ScaledMonoid am = axb();
  const SpanningElement left =
      spanning_element(am, am.affine_element(0, 1), am.affine_element(0, 2));
  const SpanningElement right =
      spanning_element(am, am.affine_element(1, 3), am.affine_element(0, 1));
  const SpanningElement expected =
      spanning_element(am, am.affine_element(2, 3), am.affine_element(1, 2));
  CHECK(spanning_product(am, left, right) == expected);

  CHECK(spanning_adjoint(am, left) ==
        spanning_element(am, am.affine_element(0, 2), am.affine_element(0, 1)));
  CHECK(spanning_adjoint(am, spanning_zero()) == spanning_zero());
}

TEST_CASE("trace mixtures evaluate characters of the kernel exactly") {
  const ScaledMonoid am = axb();
  const MonoidElement k0 = am.affine_element(0, 1);
  const MonoidElement k1 = am.affine_element(1, 1);

  const TraceSpec zero_angle = point_trace(am, {mpq_class(0)});
  CHECK(trace_eval(am, zero_angle, k1, k0) == Complex{1.0, 0.0});

  const TraceSpec half = point_trace(am, {mpq_class(1, 2)});
  CHECK(trace_eval(am, half, k1, k0) == Complex{-1.0, 0.0});

  const TraceSpec mix = trace_spec(
      am, {mpq_class(1, 2), mpq_class(1, 2)}, {{mpq_class(0)}, {mpq_class(1, 2)}});
  CHECK(trace_eval(am, mix, k1, k0) == Complex{0.0, 0.0});

  const TraceSpec third = point_trace(am, {mpq_class(1, 3)});
  const Complex forward = trace_eval(am, third, k1, k0);
  const Complex backward = trace_eval(am, third, k0, k1);
  CHECK(std::abs(forward - std::conj(backward)) <= 1e-15);
  CHECK(std::abs(forward) <= 1.0 + 1e-15);
  CHECK(trace_eval(am, third, k0, k0) == Complex{1.0, 0.0});

  // Arguments must lie in the kernel.
  const MonoidElement off = am.affine_element(0, 2);
  CHECK_THROWS_WITH_AS((void)trace_eval(am, half, off, k0),
                       doctest::Contains("ker N"), Error);

  // Validation: weights must sum to one, dimensions must match, and free
  // monoids with two weight-one generators have no abelian kernel.
  CHECK_THROWS_AS((void)trace_spec(am, {mpq_class(1, 2)}, {{mpq_class(0)}}),
                  Error);
  CHECK_THROWS_AS((void)trace_spec(am, {mpq_class(1)}, {{}}), Error);
  CHECK_THROWS_AS(
      (void)trace_spec(ScaledMonoid::free_monoid({1, 1}), {mpq_class(1)},
                       {{mpq_class(0)}}),
      Error);
  // Angles are canonicalized into [0, 1).
  const TraceSpec wrapped = point_trace(am, {mpq_class(7, 2)});
  CHECK(wrapped.angles[0][0] == mpq_class(1, 2));
}

TEST_CASE("partition functions: partial sums, closed forms, tails") {
  SUBCASE("two free generators of weight two") {
    const ScaledMonoid fm = free22();
    const ZetaResult z = zeta(fm, 3.0, mpq_class(1) << 16);
    REQUIRE(z.closed_form.has_value());
    CHECK(std::abs(*z.closed_form - 4.0 / 3.0) <= 1e-12);
    CHECK(std::abs(z.partial - *z.closed_form) <= 1e-9);  // tail < 1e-9 here
    REQUIRE(z.tail_bound.has_value());
    CHECK(std::abs(*z.closed_form - z.partial) <= *z.tail_bound + 1e-15);
    CHECK(z.tail_rigorous);
    CHECK_FALSE(z.divergent);
    CHECK(z.abscissa == 1.0);
    CHECK(z.classes_used == mpz_class((mpz_class(1) << 17) - 1));

    // At beta = 1 the series hits its abscissa: flagged divergent.
    CHECK(zeta(fm, 1.0, 64).divergent);
  }

  SUBCASE("abelian weights") {
    const ZetaResult z = zeta(ScaledMonoid::abelian_monoid({2, 3}), 2.0, 4096);
    REQUIRE(z.closed_form.has_value());
    CHECK(std::abs(*z.closed_form - 1.5) <= 1e-12);
    REQUIRE(z.tail_bound.has_value());
    CHECK(*z.closed_form - z.partial <= *z.tail_bound + 1e-15);
    CHECK(z.abscissa == 0.0);

    // A weight-one coordinate is quotiented away by the equivalence.
    const ZetaResult g = zeta(grid12(), 3.0, 4096);
    REQUIRE(g.closed_form.has_value());
    CHECK(std::abs(*g.closed_form - 1.0 / (1.0 - 0.125)) <= 1e-12);
  }

  SUBCASE("affine partial matches the shifted Riemann series") {
    const ZetaResult z = zeta(axb(), 3.0, 10000);
    const double pi_sq_6 = 1.6449340668482264;
    CHECK(std::abs(z.partial - pi_sq_6) <= 1e-3);
    REQUIRE(z.closed_form.has_value());
    CHECK(std::abs(*z.closed_form - pi_sq_6) <= 1e-9);
    REQUIRE(z.tail_bound.has_value());
    CHECK(std::abs(*z.closed_form - z.partial) <= *z.tail_bound + 1e-12);
    CHECK(z.tail_rigorous);
    CHECK(z.abscissa == 2.0);
    CHECK(z.classes_used == mpz_class(10000) * 10001 / 2);

    CHECK(zeta(axb(), 1.5, 100).divergent);
  }

  SUBCASE("weight-one-only monoids have a constant partition function") {
    const ZetaResult z = zeta(ScaledMonoid::free_monoid({1, 1}), 5.0, 100);
    CHECK(z.partial == 1.0);
    CHECK(*z.closed_form == 1.0);
    CHECK_FALSE(z.divergent);
  }

  SUBCASE("mixing weight one with heavier generators diverges everywhere") {
    const ScaledMonoid mixed = ScaledMonoid::free_monoid({1, 2});
    const ZetaResult small = zeta(mixed, 3.0, mpq_class(3, 2));
    CHECK(small.divergent);
    CHECK(std::isinf(small.abscissa));
    CHECK_THROWS_AS((void)zeta(mixed, 3.0, 8), Error);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS((void)zeta(axb(), 0.0, 100), Error);
    CHECK_THROWS_AS((void)zeta(axb(), 3.0, mpq_class(1, 2)), Error);
  }
}

TEST_CASE("value-grouped class counting agrees with the partition sum") {
  const PartitionSum ps = class_counting_partition(axb(), 3.0, 3);
  REQUIRE(ps.blocks.size() == 3);
  CHECK(ps.blocks[0].value == 1);
  CHECK(ps.blocks[0].count == 1);
  CHECK(ps.blocks[1].count == 2);
  CHECK(ps.blocks[2].count == 3);
  const double expected =
      1.0 + 2.0 * std::exp(-3.0 * std::log(2.0)) +
      3.0 * std::exp(-3.0 * std::log(3.0));
  CHECK(std::abs(ps.value - expected) <= 1e-12);

  // Same classes, same grouping, bit-identical partial sums.
  CHECK(class_counting_partition(axb(), 2.5, 500).value ==
        zeta(axb(), 2.5, 500).partial);
  CHECK(class_counting_partition(free22(), 3.0, 4096).value ==
        zeta(free22(), 3.0, 4096).partial);
  CHECK(class_counting_partition(free23(), 2.2, 300).value ==
        zeta(free23(), 2.2, 300).partial);
  CHECK(class_counting_partition(grid12(), 1.7, 600).value ==
        zeta(grid12(), 1.7, 600).partial);

  // Free monoids with trivial kernel count one class per word.
  const PartitionSum words = class_counting_partition(free22(), 3.0, 8);
  REQUIRE(words.blocks.size() == 4);  // values 1, 2, 4, 8
  CHECK(words.blocks[3].count == 8);
}

TEST_CASE("the uniqueness threshold solves zeta = 2") {
  const ThresholdReport fr = beta_threshold(free22());
  CHECK(fr.beta_star == 2.0);  // exact: 2^{1-beta} = 1/2
  CHECK(fr.exact);
  CHECK(fr.abscissa == 1.0);

  const ThresholdReport ab = beta_threshold(ScaledMonoid::abelian_monoid({2}));
  CHECK(ab.beta_star == 1.0);  // exact: (1 - 2^{-beta})^{-1} = 2
  CHECK(ab.exact);
  CHECK(ab.abscissa == 0.0);

  const ThresholdReport ax = beta_threshold(axb());
  CHECK(ax.beta_star >= 2.72);
  CHECK(ax.beta_star <= 2.74);
  CHECK(ax.abscissa == 2.0);
  CHECK_FALSE(ax.exact);

  // Bisection path: verify the defining equation numerically.
  const ThresholdReport mixed = beta_threshold(free23());
  const double s = std::exp(-mixed.beta_star * std::log(2.0)) +
                   std::exp(-mixed.beta_star * std::log(3.0));
  CHECK(std::abs(s - 0.5) <= 1e-12);
  const ZetaResult at_star = zeta(free23(), mixed.beta_star, 4096);
  CHECK(std::abs(*at_star.closed_form - 2.0) <= 1e-9);

  const ThresholdReport pair =
      beta_threshold(ScaledMonoid::abelian_monoid({2, 2}));
  double closed = 1.0;
  for (int i = 0; i < 2; ++i) {
    closed /= 1.0 - std::exp(-pair.beta_star * std::log(2.0));
  }
  CHECK(std::abs(closed - 2.0) <= 1e-9);

  CHECK_THROWS_AS((void)beta_threshold(ScaledMonoid::free_monoid({1})), Error);
  CHECK_THROWS_AS((void)beta_threshold(ScaledMonoid::abelian_monoid({1, 1})),
                  Error);
  CHECK_THROWS_AS((void)beta_threshold(ScaledMonoid::free_monoid({1, 2})),
                  Error);
}

TEST_CASE("low-temperature state values on spanning elements") {
  SUBCASE("the identity evaluates to one exactly") {
    const ScaledMonoid fm = free22();
    const TraceSpec ft = trace_spec(fm, {mpq_class(1)}, {{}});
    const SpanningElement one =
        spanning_element(fm, fm.identity(), fm.identity());
    CHECK(kms_value(fm, 3.0, ft, one, 4096).value == Complex{1.0, 0.0});

    const ScaledMonoid am = axb();
    const TraceSpec at = point_trace(am, {mpq_class(1, 3)});
    const SpanningElement aone =
        spanning_element(am, am.identity(), am.identity());
    CHECK(kms_value(am, 2.6, at, aone, 800).value == Complex{1.0, 0.0});

    const ScaledMonoid gm = grid12();
    const TraceSpec gt = trace_spec(
        gm, {mpq_class(1, 2), mpq_class(1, 2)}, {{mpq_class(0)}, {mpq_class(2, 3)}});
    const SpanningElement gone =
        spanning_element(gm, gm.identity(), gm.identity());
    CHECK(kms_value(gm, 1.8, gt, gone, 512).value == Complex{1.0, 0.0});
  }

  SUBCASE("frozen point values") {
    const ScaledMonoid fm = free22();
    const TraceSpec ft = trace_spec(fm, {mpq_class(1)}, {{}});
    const SpanningElement vaa =
        spanning_element(fm, fm.generator(0), fm.generator(0));
    const KmsResult r = kms_value(fm, 3.0, ft, vaa, 4096);
    CHECK(std::abs(r.value - Complex{0.125, 0.0}) <= 1e-6);
    CHECK(r.value.imag() == 0.0);

    const ScaledMonoid am = axb();
    const TraceSpec at = point_trace(am, {mpq_class(0)});
    const SpanningElement v11 =
        spanning_element(am, am.affine_element(1, 1), am.identity());
    const KmsResult a = kms_value(am, 3.0, at, v11, 10000);
    CHECK(std::abs(a.value - Complex{0.607927, 0.0}) <= 1e-3);
    CHECK(std::abs(a.value - 1.0 / a.zeta_partial) <= 1e-15);
  }

  SUBCASE("gauge invariance: unequal scales give exactly zero") {
    const ScaledMonoid fm = free22();
    const TraceSpec ft = trace_spec(fm, {mpq_class(1)}, {{}});
    const SpanningElement unequal =
        spanning_element(fm, fm.multiply(fm.generator(0), fm.generator(0)),
                         fm.generator(1));
    const KmsResult r = kms_value(fm, 3.0, ft, unequal, 256);
    CHECK(r.value == Complex{0.0, 0.0});
    CHECK(r.tail_allowance == 0.0);

    // Equal scales but distinct words: still exactly zero (trivial kernel).
    const SpanningElement distinct =
        spanning_element(fm, fm.generator(0), fm.generator(1));
    CHECK(kms_value(fm, 3.0, ft, distinct, 256).value == Complex{0.0, 0.0});

    const ScaledMonoid am = axb();
    const TraceSpec at = point_trace(am, {mpq_class(1, 3)});
    const SpanningElement off = spanning_element(
        am, am.affine_element(0, 2), am.affine_element(1, 1));
    CHECK(kms_value(am, 3.0, at, off, 100).value == Complex{0.0, 0.0});
  }

  SUBCASE("the zero element evaluates to zero") {
    const ScaledMonoid am = axb();
    const TraceSpec at = point_trace(am, {mpq_class(0)});
    const KmsResult r = kms_value(am, 3.0, at, spanning_zero(), 100);
    CHECK(r.value == Complex{0.0, 0.0});
    CHECK(r.tail_allowance == 0.0);
  }

  SUBCASE("below the abscissa the evaluation refuses") {
    const ScaledMonoid am = axb();
    const TraceSpec at = point_trace(am, {mpq_class(0)});
    const SpanningElement one =
        spanning_element(am, am.identity(), am.identity());
    CHECK_THROWS_WITH_AS((void)kms_value(am, 1.5, at, one, 100),
                         doctest::Contains("diverges"), Error);
  }
}

TEST_CASE("engine values match the defining sum over representatives") {
  std::mt19937_64 rng(20260817);
  const mpq_class cutoff = 30;

  SUBCASE("affine family with twisted representatives") {
    const ScaledMonoid am = axb();
    const TraceSpec at = trace_spec(
        am, {mpq_class(2, 3), mpq_class(1, 3)}, {{mpq_class(1, 3)}, {mpq_class(1, 5)}});
    const auto pool = am.enumerate_elements(6, 8);
    // Group by scale so the sampled pairs can be scale-equivalent at all.
    std::map<mpq_class, std::vector<MonoidElement>> by_scale;
    for (const MonoidElement& x : pool) by_scale[am.scale_value(x)].push_back(x);
    std::vector<std::vector<MonoidElement>> groups;
    for (auto& [value, members] : by_scale) groups.push_back(members);
    const auto twists = am.enumerate_kernel(3);
    REQUIRE(twists.size() >= 2);
    std::size_t nontrivial = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const auto& group = groups[rng() % groups.size()];
      const MonoidElement& s = group[rng() % group.size()];
      const MonoidElement& t = group[rng() % group.size()];
      ++nontrivial;
      const Complex direct = brute_kms(am, 3.0, at, s, t, cutoff);
      const Complex twisted = brute_kms(am, 3.0, at, s, t, cutoff, twists);
      const KmsResult engine =
          kms_value(am, 3.0, at, spanning_element(am, s, t), cutoff);
      CHECK(std::abs(direct - engine.value) <= 1e-9);
      // Representative independence: the twisted sum is the same sum.
      CHECK(std::abs(twisted - direct) <= 1e-12);
    }
    CHECK(nontrivial >= 10);
  }

  SUBCASE("free and abelian families") {
    const ScaledMonoid fm = free23();
    const TraceSpec ft = trace_spec(fm, {mpq_class(1)}, {{}});
    const auto fpool = fm.enumerate_elements(9, 3);
    for (std::size_t i = 0; i < fpool.size(); ++i) {
      for (std::size_t j = 0; j < fpool.size(); ++j) {
        const Complex direct =
            brute_kms(fm, 2.2, ft, fpool[i], fpool[j], cutoff);
        const KmsResult engine = kms_value(
            fm, 2.2, ft, spanning_element(fm, fpool[i], fpool[j]), cutoff);
        REQUIRE(std::abs(direct - engine.value) <= 1e-9);
      }
    }

    const ScaledMonoid gm = grid12();
    const TraceSpec gt = point_trace(gm, {mpq_class(1, 3)});
    const auto gpool = gm.enumerate_elements(8, 3);
    const auto gtwists = gm.enumerate_kernel(2);
    for (int trial = 0; trial < 80; ++trial) {
      const MonoidElement& s = gpool[rng() % gpool.size()];
      const MonoidElement& t = gpool[rng() % gpool.size()];
      const Complex direct = brute_kms(gm, 1.8, gt, s, t, cutoff);
      const Complex twisted = brute_kms(gm, 1.8, gt, s, t, cutoff, gtwists);
      const KmsResult engine =
          kms_value(gm, 1.8, gt, spanning_element(gm, s, t), cutoff);
      CHECK(std::abs(direct - engine.value) <= 1e-9);
      CHECK(std::abs(twisted - direct) <= 1e-12);
    }
  }
}

TEST_CASE("the state is affine in the trace, bit-for-bit on point masses") {
  const ScaledMonoid am = axb();
  const TraceSpec t1 = point_trace(am, {mpq_class(1, 3)});
  const TraceSpec t2 = point_trace(am, {mpq_class(1, 5)});
  const mpq_class w(1, 3);
  const TraceSpec mix = trace_spec(
      am, {w, mpq_class(1) - w}, {{mpq_class(1, 3)}, {mpq_class(1, 5)}});

  const std::vector<SpanningElement> elements = {
      spanning_element(am, am.identity(), am.identity()),
      spanning_element(am, am.affine_element(6, 1), am.identity()),
      spanning_element(am, am.affine_element(4, 2), am.affine_element(0, 2)),
      spanning_element(am, am.affine_element(1, 1), am.affine_element(3, 1)),
  };
  const double wd = w.get_d();
  const double cd = mpq_class(mpq_class(1) - w).get_d();
  for (const SpanningElement& x : elements) {
    const Complex mixed = kms_value(am, 3.0, mix, x, 200).value;
    const Complex split = wd * kms_value(am, 3.0, t1, x, 200).value +
                          cd * kms_value(am, 3.0, t2, x, 200).value;
    CHECK(mixed == split);  // identical float operations, identical result
  }
}

TEST_CASE("ground states kill off-kernel factors and restrict to the trace") {
  const ScaledMonoid am = axb();
  const TraceSpec half = point_trace(am, {mpq_class(1, 2)});

  const SpanningElement kernel_pair = spanning_element(
      am, am.affine_element(2, 1), am.affine_element(1, 1));
  CHECK(ground_value(am, half, kernel_pair) == Complex{-1.0, 0.0});

  const SpanningElement off = spanning_element(
      am, am.affine_element(0, 2), am.affine_element(0, 2));
  CHECK(ground_value(am, half, off) == Complex{0.0, 0.0});

  const SpanningElement one =
      spanning_element(am, am.identity(), am.identity());
  CHECK(ground_value(am, half, one) == Complex{1.0, 0.0});
  CHECK(ground_value(am, half, spanning_zero()) == Complex{0.0, 0.0});
}

TEST_CASE("large beta collapses the state onto the ground state") {
  const double beta = 60.0;

  const ScaledMonoid am = axb();
  const TraceSpec at = trace_spec(
      am, {mpq_class(1, 2), mpq_class(1, 2)}, {{mpq_class(1, 2)}, {mpq_class(1, 3)}});
  const auto pool = am.enumerate_elements(5, 6);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const MonoidElement& s = pool[rng() % pool.size()];
    const MonoidElement& t = pool[rng() % pool.size()];
    const SpanningElement x = spanning_element(am, s, t);
    const Complex cold = kms_value(am, beta, at, x, 500).value;
    const Complex ground = ground_value(am, at, x);
    CHECK(std::abs(cold - ground) <= 1e-6);
  }

  const ScaledMonoid fm = free22();
  const TraceSpec ft = trace_spec(fm, {mpq_class(1)}, {{}});
  const SpanningElement vaa =
      spanning_element(fm, fm.generator(0), fm.generator(0));
  CHECK(std::abs(kms_value(fm, beta, ft, vaa, 4096).value -
                 ground_value(fm, ft, vaa)) <= 1e-6);

  const ScaledMonoid gm = grid12();
  const TraceSpec gt = point_trace(gm, {mpq_class(1, 4)});
  const SpanningElement mixed = spanning_element(
      gm, gm.abelian_element({3, 1}), gm.abelian_element({0, 1}));
  CHECK(std::abs(kms_value(gm, beta, gt, mixed, 512).value -
                 ground_value(gm, gt, mixed)) <= 1e-6);
  // Here both factors lie off the kernel, so the ground state vanishes.
  const SpanningElement off = spanning_element(
      gm, gm.abelian_element({0, 1}), gm.abelian_element({2, 1}));
  CHECK(ground_value(gm, gt, off) == Complex{0.0, 0.0});
}

TEST_CASE("random spanning pairs satisfy the KMS identity") {
  SUBCASE("free family: closed forms, residuals at rounding level") {
    const ScaledMonoid fm = free22();
    const TraceSpec ft = trace_spec(fm, {mpq_class(1)}, {{}});
    const KmsConditionReport r =
        kms_condition_check(fm, 2.5, ft, 100, 4096, 20260817);
    CHECK(r.pass);
    CHECK(r.samples == 100);
    CHECK(r.max_residual <= 1e-9);
    CHECK(r.max_residual <= r.max_allowance);
    CHECK(r.tail_rigorous);
  }

  SUBCASE("abelian family with a kernel direction") {
    const ScaledMonoid gm = grid12();
    const TraceSpec gt = trace_spec(
        gm, {mpq_class(3, 4), mpq_class(1, 4)}, {{mpq_class(1, 3)}, {mpq_class(0)}});
    const KmsConditionReport r =
        kms_condition_check(gm, 1.5, gt, 100, 512, 11);
    CHECK(r.pass);
    CHECK(r.max_residual <= 1e-9);
  }

  SUBCASE("affine family within the truncation allowance") {
    const ScaledMonoid am = axb();
    const TraceSpec at = trace_spec(
        am, {mpq_class(1, 2), mpq_class(1, 2)}, {{mpq_class(1, 3)}, {mpq_class(1, 2)}});
    const KmsConditionReport r =
        kms_condition_check(am, 3.2287, at, 100, 2000, 42);
    CHECK(r.pass);
    CHECK(r.max_residual <= r.max_allowance);
    CHECK(r.tail_rigorous);
    CHECK_FALSE(r.worst_pair.empty());
  }
}

TEST_CASE("states are hermitian and positive within the allowance") {
  const ScaledMonoid am = axb();
  const TraceSpec at = trace_spec(
      am, {mpq_class(1, 2), mpq_class(1, 2)}, {{mpq_class(1, 3)}, {mpq_class(3, 4)}});
  const double beta = 3.0;
  const mpq_class cutoff = 500;
  const auto pool = am.enumerate_elements(5, 5);
  std::mt19937_64 rng(5);

  SUBCASE("adjoints conjugate the value") {
    for (int trial = 0; trial < 50; ++trial) {
      const SpanningElement x = spanning_element(
          am, pool[rng() % pool.size()], pool[rng() % pool.size()]);
      const KmsResult forward = kms_value(am, beta, at, x, cutoff);
      const KmsResult backward =
          kms_value(am, beta, at, spanning_adjoint(am, x), cutoff);
      CHECK(std::abs(backward.value - std::conj(forward.value)) <=
            forward.tail_allowance + backward.tail_allowance + 1e-12);
    }
  }

  SUBCASE("quadratic forms phi(x* x) stay nonnegative") {
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<SpanningElement> parts;
      std::vector<double> coeff;
      for (int i = 0; i < 3; ++i) {
        parts.push_back(spanning_element(am, pool[rng() % pool.size()],
                                         pool[rng() % pool.size()]));
        coeff.push_back(static_cast<double>(static_cast<int>(rng() % 9)) - 4.0);
      }
      Complex quad{0.0, 0.0};
      double slack = 1e-9;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = 0; j < parts.size(); ++j) {
          const SpanningElement prod = spanning_product(
              am, spanning_adjoint(am, parts[i]), parts[j]);
          const KmsResult r = kms_value(am, beta, at, prod, cutoff);
          quad += coeff[i] * coeff[j] * r.value;
          slack += std::abs(coeff[i] * coeff[j]) * r.tail_allowance;
        }
      }
      CHECK(quad.real() >= -slack);
      CHECK(std::abs(quad.imag()) <= slack);
    }
  }
}
