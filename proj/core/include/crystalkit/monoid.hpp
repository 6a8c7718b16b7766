#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "crystalkit/error.hpp"

namespace crystalkit {

// Built-in right-LCM monoid families carrying a multiplicative scale
// N : S -> [1, oo). Any two principal right ideals either are disjoint or
// intersect in a principal right ideal; the scale is >= 1 everywhere and its
// unit set ker N = {N = 1} drives the scale-equivalence s ~ t iff sa = tb for
// some a, b in ker N.
enum class FamilyKind {
  Free,     // words over weighted generators, scale = product of letter weights
  Abelian,  // N^k with componentwise weights, scale = prod w_i^{e_i}
  Affine,   // pairs (b, a) acting as x -> a x + b on N; (b,a)(d,c) = (b+ad, ac)
};

using Word = std::vector<std::uint32_t>;
using Exponents = std::vector<std::int64_t>;

struct AffinePair {
  mpz_class offset;  // b >= 0
  mpz_class factor;  // a >= 1 (the scale)
  friend bool operator==(const AffinePair& x, const AffinePair& y) {
    return x.offset == y.offset && x.factor == y.factor;
  }
};

struct MonoidElement {
  std::variant<Word, Exponents, AffinePair> payload;

  const Word& word() const;
  const Exponents& exponents() const;
  const AffinePair& affine() const;
  friend bool operator==(const MonoidElement& x, const MonoidElement& y) {
    return x.payload == y.payload;
  }
};

struct LcmResult {
  bool disjoint = false;
  MonoidElement element;  // valid only when !disjoint
};

// Minimal kernel pair (p, q) with x*p == y*q for scale-equivalent x ~ y.
struct KernelPair {
  MonoidElement p;
  MonoidElement q;
};

enum class Ternary { False, True, Undecided };

struct ClassRep {
  MonoidElement representative;  // (value, lex)-minimal in its class
  mpq_class value;
};

struct ValueCount {
  mpq_class value;
  mpz_class count;  // number of scale-equivalence classes with this value
};

struct ScaleConditionReport {
  bool pass = true;
  std::string detail;  // human-readable witness when !pass
  std::optional<MonoidElement> witness_s;
  std::optional<MonoidElement> witness_t;
  unsigned long pairs_checked = 0;
};

class ScaledMonoid {
 public:
  static constexpr std::size_t kDefaultClassLimit = 200000;

  static ScaledMonoid free_monoid(std::vector<mpq_class> weights);
  static ScaledMonoid abelian_monoid(std::vector<mpq_class> weights);
  static ScaledMonoid affine_monoid();

  FamilyKind kind() const { return kind_; }
  const std::vector<mpq_class>& weights() const { return weights_; }
  std::size_t generator_count() const { return weights_.size(); }

  MonoidElement identity() const;
  MonoidElement generator(std::size_t index) const;  // Free/Abelian only
  MonoidElement affine_element(const mpz_class& offset,
                               const mpz_class& factor) const;
  MonoidElement abelian_element(Exponents exponents) const;
  MonoidElement word_element(Word letters) const;

  bool is_identity(const MonoidElement& x) const;
  // Total order: by scale value, then lexicographically on the payload.
  int compare(const MonoidElement& x, const MonoidElement& y) const;

  MonoidElement multiply(const MonoidElement& x, const MonoidElement& y) const;
  // u with x = s*u, if any.
  std::optional<MonoidElement> left_divide(const MonoidElement& s,
                                           const MonoidElement& x) const;
  // Least common multiple of the right ideals xS and yS.
  LcmResult lcm(const MonoidElement& x, const MonoidElement& y) const;

  mpq_class scale_value(const MonoidElement& x) const;
  bool kernel_member(const MonoidElement& x) const;

  // Exact per-family decision of the scale-equivalence s ~ t.
  bool equivalent_mod_kernel(const MonoidElement& s,
                             const MonoidElement& t) const;
  // Generic bounded search over kernel multipliers of size <= bound; returns
  // Undecided instead of False when the bound is exhausted.
  Ternary equivalent_bounded(const MonoidElement& s, const MonoidElement& t,
                             std::size_t size_bound) const;

  // All scale-equivalence classes with value <= cutoff, as (value, lex)-minimal
  // representatives in ascending (value, lex) order. Throws BoundExceeded if
  // more than class_limit classes exist below the cutoff (or infinitely many).
  std::vector<ClassRep> class_representatives(
      const mpq_class& cutoff, std::size_t class_limit = kDefaultClassLimit) const;

  // Number of classes per scale value, ascending value, value <= cutoff.
  // Throws Divergent when a value below the cutoff has infinitely many classes.
  std::vector<ValueCount> class_value_counts(const mpq_class& cutoff) const;

  // Minimal kernel pair (p, q) with x*p = y*q; throws NotEquivalent.
  KernelPair solve_pq(const MonoidElement& x, const MonoidElement& y) const;

  // Checks sS n tS = rS with r in s*ker N for enumerated s (value <= value
  // bound, payload size <= size_bound) and kernel t (size <= size_bound).
  ScaleConditionReport scale_condition_check(const mpq_class& value_bound,
                                             std::size_t size_bound) const;

  // Kernel structure. The kernel is free abelian for all families except free
  // monoids with >= 2 weight-one generators.
  bool kernel_abelian() const;
  std::size_t kernel_rank() const;  // throws NonAbelianKernel
  std::vector<mpz_class> kernel_exponent(const MonoidElement& x) const;

  std::vector<MonoidElement> enumerate_elements(const mpq_class& value_bound,
                                                std::size_t size_bound) const;
  std::vector<MonoidElement> enumerate_kernel(std::size_t size_bound) const;

  std::string to_string(const MonoidElement& x) const;
  std::string family_name() const;

 private:
  ScaledMonoid(FamilyKind kind, std::vector<mpq_class> weights);
  void require_kind(const MonoidElement& x) const;
  int payload_compare(const MonoidElement& x, const MonoidElement& y) const;
  std::vector<std::size_t> free_kernel_generators() const;
  std::vector<std::size_t> abelian_kernel_coords() const;

  FamilyKind kind_;
  std::vector<mpq_class> weights_;
};

}  // namespace crystalkit
