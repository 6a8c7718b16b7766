// Microbenchmarks for the hot paths: Smith reduction, hull composition,
// partition-function partial sums, and the finite crystal pipeline.

#include <benchmark/benchmark.h>
#include <gmpxx.h>

#include <cstddef>
#include <random>
#include <vector>

#include "crystalkit/catalog.hpp"
#include "crystalkit/finite.hpp"
#include "crystalkit/hull.hpp"
#include "crystalkit/kms.hpp"
#include "crystalkit/monoid.hpp"
#include "crystalkit/snf.hpp"

namespace ck = crystalkit;

namespace {

ck::IntMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-100, 100);
  ck::IntMatrix a = ck::IntMatrix::zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = entry(rng);
  return a;
}

void smith_normal_form_8x8(benchmark::State& state) {
  const ck::IntMatrix a = random_matrix(8, 20260817);
  for (auto _ : state) {
    ck::SmithDecomposition s = ck::smith_normal_form(a);
    benchmark::DoNotOptimize(s.rank);
  }
}
BENCHMARK(smith_normal_form_8x8);

void hull_compose_affine(benchmark::State& state) {
  const ck::ScaledMonoid am = ck::ScaledMonoid::affine_monoid();
  const ck::InverseHull hull(am);
  std::mt19937_64 rng(7);
  std::vector<ck::HullElement> pool;
  for (int i = 0; i < 64; ++i) {
    pool.push_back(hull.element(
        am.affine_element(mpz_class(static_cast<long>(rng() % 8)),
                          mpz_class(static_cast<long>(1 + rng() % 5))),
        am.affine_element(mpz_class(static_cast<long>(rng() % 8)),
                          mpz_class(static_cast<long>(1 + rng() % 5)))));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const ck::HullElement& x = pool[i % pool.size()];
    const ck::HullElement& y = pool[(i * 31 + 17) % pool.size()];
    ck::HullElement z = hull.compose(x, y);
    benchmark::DoNotOptimize(z.zero);
    ++i;
  }
}
BENCHMARK(hull_compose_affine);

void affine_zeta_cutoff_1e4(benchmark::State& state) {
  const ck::ScaledMonoid am = ck::ScaledMonoid::affine_monoid();
  for (auto _ : state) {
    ck::ZetaResult z = ck::zeta(am, 3.0, 10000);
    benchmark::DoNotOptimize(z.partial);
  }
}
BENCHMARK(affine_zeta_cutoff_1e4);

void matrix_unit_crystal_pipeline(benchmark::State& state) {
  const ck::CatalogEntry b2 = ck::catalog_entry("b2_lambda2");
  for (auto _ : state) {
    ck::CrystalResult cr = ck::crystal(b2.semigroup, b2.scale);
    ck::BoundaryReport br = ck::boundary_set(b2.semigroup, b2.scale);
    ck::RestrictionCertificate cert =
        ck::restriction_iso_certificate(b2.semigroup, b2.scale);
    benchmark::DoNotOptimize(cr.icx.size());
    benchmark::DoNotOptimize(br.members.size());
    benchmark::DoNotOptimize(cert.pass);
  }
}
BENCHMARK(matrix_unit_crystal_pipeline);

}  // namespace

BENCHMARK_MAIN();
