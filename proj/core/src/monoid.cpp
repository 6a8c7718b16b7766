#include "crystalkit/monoid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "crystalkit/rational.hpp"

namespace crystalkit {

namespace {

const char* kKindNames[] = {"free", "abelian", "axb"};

bool word_is_prefix(const Word& p, const Word& w) {
  if (p.size() > w.size()) return false;
  return std::equal(p.begin(), p.end(), w.begin());
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

template <typename Vec>
int lex_compare(const Vec& x, const Vec& y) {
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < y[i]) return -1;
    if (y[i] < x[i]) return 1;
  }
  if (x.size() < y.size()) return -1;
  if (x.size() > y.size()) return 1;
  return 0;
}

}  // namespace

const Word& MonoidElement::word() const {
  const Word* w = std::get_if<Word>(&payload);
  if (w == nullptr) fail(ErrorCode::FamilyMismatch, "element is not a word");
  return *w;
}

const Exponents& MonoidElement::exponents() const {
  const Exponents* e = std::get_if<Exponents>(&payload);
  if (e == nullptr) {
    fail(ErrorCode::FamilyMismatch, "element is not an exponent vector");
  }
  return *e;
}

const AffinePair& MonoidElement::affine() const {
  const AffinePair* p = std::get_if<AffinePair>(&payload);
  if (p == nullptr) {
    fail(ErrorCode::FamilyMismatch, "element is not an affine pair");
  }
  return *p;
}

ScaledMonoid::ScaledMonoid(FamilyKind kind, std::vector<mpq_class> weights)
    : kind_(kind), weights_(std::move(weights)) {}

ScaledMonoid ScaledMonoid::free_monoid(std::vector<mpq_class> weights) {
  if (weights.empty()) {
    fail(ErrorCode::Invalid, "free monoid needs at least one generator");
  }
  for (const auto& w : weights) {
    if (w < 1) fail(ErrorCode::Invalid, "generator weights must be >= 1");
  }
  return ScaledMonoid(FamilyKind::Free, std::move(weights));
}

ScaledMonoid ScaledMonoid::abelian_monoid(std::vector<mpq_class> weights) {
  if (weights.empty()) {
    fail(ErrorCode::Invalid, "abelian monoid needs at least one coordinate");
  }
  for (const auto& w : weights) {
    if (w < 1) fail(ErrorCode::Invalid, "coordinate weights must be >= 1");
  }
  return ScaledMonoid(FamilyKind::Abelian, std::move(weights));
}

ScaledMonoid ScaledMonoid::affine_monoid() {
  return ScaledMonoid(FamilyKind::Affine, {});
}

std::string ScaledMonoid::family_name() const {
  return kKindNames[static_cast<int>(kind_)];
}

void ScaledMonoid::require_kind(const MonoidElement& x) const {
  switch (kind_) {
    case FamilyKind::Free:
      for (std::uint32_t letter : x.word()) {
        if (letter >= weights_.size()) {
          fail(ErrorCode::FamilyMismatch, "letter index out of range");
        }
      }
      break;
    case FamilyKind::Abelian: {
      const Exponents& e = x.exponents();
      if (e.size() != weights_.size()) {
        fail(ErrorCode::FamilyMismatch, "exponent vector has wrong length");
      }
      for (std::int64_t v : e) {
        if (v < 0) fail(ErrorCode::Invalid, "exponents must be nonnegative");
      }
      break;
    }
    case FamilyKind::Affine: {
      const AffinePair& p = x.affine();
      if (p.offset < 0 || p.factor < 1) {
        fail(ErrorCode::Invalid, "affine pair needs offset >= 0, factor >= 1");
      }
      break;
    }
  }
}

MonoidElement ScaledMonoid::identity() const {
  switch (kind_) {
    case FamilyKind::Free: return MonoidElement{Word{}};
    case FamilyKind::Abelian:
      return MonoidElement{Exponents(weights_.size(), 0)};
    case FamilyKind::Affine:
      return MonoidElement{AffinePair{0, 1}};
  }
  fail(ErrorCode::Invalid, "unreachable");
}

MonoidElement ScaledMonoid::generator(std::size_t index) const {
  if (index >= weights_.size() || kind_ == FamilyKind::Affine) {
    fail(ErrorCode::Invalid, "no such generator");
  }
  if (kind_ == FamilyKind::Free) {
    return MonoidElement{Word{static_cast<std::uint32_t>(index)}};
  }
  Exponents e(weights_.size(), 0);
  e[index] = 1;
  return MonoidElement{e};
}

MonoidElement ScaledMonoid::affine_element(const mpz_class& offset,
                                           const mpz_class& factor) const {
  if (kind_ != FamilyKind::Affine) {
    fail(ErrorCode::FamilyMismatch, "not an affine monoid");
  }
  MonoidElement x{AffinePair{offset, factor}};
  require_kind(x);
  return x;
}

MonoidElement ScaledMonoid::abelian_element(Exponents exponents) const {
  if (kind_ != FamilyKind::Abelian) {
    fail(ErrorCode::FamilyMismatch, "not an abelian monoid");
  }
  MonoidElement x{std::move(exponents)};
  require_kind(x);
  return x;
}

MonoidElement ScaledMonoid::word_element(Word letters) const {
  if (kind_ != FamilyKind::Free) {
    fail(ErrorCode::FamilyMismatch, "not a free monoid");
  }
  MonoidElement x{std::move(letters)};
  require_kind(x);
  return x;
}

bool ScaledMonoid::is_identity(const MonoidElement& x) const {
  return x == identity();
}

int ScaledMonoid::payload_compare(const MonoidElement& x,
                                  const MonoidElement& y) const {
  switch (kind_) {
    case FamilyKind::Free: return lex_compare(x.word(), y.word());
    case FamilyKind::Abelian: return lex_compare(x.exponents(), y.exponents());
    case FamilyKind::Affine: {
      const AffinePair &a = x.affine(), &b = y.affine();
      if (a.factor != b.factor) return a.factor < b.factor ? -1 : 1;
      if (a.offset != b.offset) return a.offset < b.offset ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

int ScaledMonoid::compare(const MonoidElement& x, const MonoidElement& y) const {
  const mpq_class vx = scale_value(x), vy = scale_value(y);
  const int c = cmp(vx, vy);
  if (c != 0) return c < 0 ? -1 : 1;
  return payload_compare(x, y);
}

MonoidElement ScaledMonoid::multiply(const MonoidElement& x,
                                     const MonoidElement& y) const {
  require_kind(x);
  require_kind(y);
  switch (kind_) {
    case FamilyKind::Free: {
      Word w = x.word();
      const Word& v = y.word();
      w.insert(w.end(), v.begin(), v.end());
      return MonoidElement{std::move(w)};
    }
    case FamilyKind::Abelian: {
      Exponents e = x.exponents();
      const Exponents& f = y.exponents();
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (__builtin_add_overflow(e[i], f[i], &e[i])) {
          fail(ErrorCode::BoundExceeded, "exponent overflow in product");
        }
      }
      return MonoidElement{std::move(e)};
    }
    case FamilyKind::Affine: {
      const AffinePair &a = x.affine(), &b = y.affine();
      return MonoidElement{
          AffinePair{a.offset + a.factor * b.offset, a.factor * b.factor}};
    }
  }
  fail(ErrorCode::Invalid, "unreachable");
}

std::optional<MonoidElement> ScaledMonoid::left_divide(
    const MonoidElement& s, const MonoidElement& x) const {
  require_kind(s);
  require_kind(x);
  switch (kind_) {
    case FamilyKind::Free: {
      const Word &p = s.word(), &w = x.word();
      if (!word_is_prefix(p, w)) return std::nullopt;
      return MonoidElement{Word(w.begin() + p.size(), w.end())};
    }
    case FamilyKind::Abelian: {
      const Exponents &a = s.exponents(), &b = x.exponents();
      Exponents u(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i] < a[i]) return std::nullopt;
        u[i] = b[i] - a[i];
      }
      return MonoidElement{std::move(u)};
    }
    case FamilyKind::Affine: {
      const AffinePair &a = s.affine(), &b = x.affine();
      if (b.factor % a.factor != 0) return std::nullopt;
      const mpz_class diff = b.offset - a.offset;
      if (diff < 0 || diff % a.factor != 0) return std::nullopt;
      return MonoidElement{
          AffinePair{diff / a.factor, b.factor / a.factor}};
    }
  }
  fail(ErrorCode::Invalid, "unreachable");
}

LcmResult ScaledMonoid::lcm(const MonoidElement& x,
                            const MonoidElement& y) const {
  require_kind(x);
  require_kind(y);
  switch (kind_) {
    case FamilyKind::Free: {
      const Word &u = x.word(), &v = y.word();
      if (word_is_prefix(u, v)) return {false, y};
      if (word_is_prefix(v, u)) return {false, x};
      return {true, identity()};
    }
    case FamilyKind::Abelian: {
      const Exponents &a = x.exponents(), &b = y.exponents();
      Exponents m(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) m[i] = std::max(a[i], b[i]);
      return {false, MonoidElement{std::move(m)}};
    }
    case FamilyKind::Affine: {
      // xS = {first coord == b mod a, >= b}; intersect two such progressions.
      const AffinePair &p = x.affine(), &q = y.affine();
      const mpz_class &a = p.factor, &b = p.offset;
      const mpz_class &c = q.factor, &d = q.offset;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
      if ((b - d) % g != 0) return {true, identity()};
      // Solve a*k = d - b (mod c): k = inv(a/g, c/g) * (d-b)/g mod (c/g).
      const mpz_class cg = c / g;
      mpz_class k;
      if (cg == 1) {
        k = 0;
      } else {
        mpz_class inv;
        const mpz_class ag_mod = mpz_class(a / g) % cg;
        if (mpz_invert(inv.get_mpz_t(), ag_mod.get_mpz_t(), cg.get_mpz_t()) ==
            0) {
          fail(ErrorCode::Invalid, "affine lcm: missing modular inverse");
        }
        k = (inv * (mpz_class((d - b) / g) % cg)) % cg;
        if (k < 0) k += cg;
      }
      const mpz_class big = a * cg;  // lcm(a, c)
      mpz_class x0 = b + a * k;      // least solution >= b
      const mpz_class lower = std::max(b, d);
      if (x0 < lower) x0 += ceil_div(lower - x0, big) * big;
      return {false, MonoidElement{AffinePair{x0, big}}};
    }
  }
  fail(ErrorCode::Invalid, "unreachable");
}

mpq_class ScaledMonoid::scale_value(const MonoidElement& x) const {
  require_kind(x);
  switch (kind_) {
    case FamilyKind::Free: {
      mpq_class v = 1;
      for (std::uint32_t letter : x.word()) v *= weights_[letter];
      return v;
    }
    case FamilyKind::Abelian: {
      mpq_class v = 1;
      const Exponents& e = x.exponents();
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != 0) v *= pow_rational(weights_[i], e[i]);
      }
      return v;
    }
    case FamilyKind::Affine:
      return mpq_class(x.affine().factor);
  }
  fail(ErrorCode::Invalid, "unreachable");
}

bool ScaledMonoid::kernel_member(const MonoidElement& x) const {
  require_kind(x);
  switch (kind_) {
    case FamilyKind::Free:
      for (std::uint32_t letter : x.word()) {
        if (weights_[letter] != 1) return false;
      }
      return true;
    case FamilyKind::Abelian: {
      const Exponents& e = x.exponents();
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] != 0 && weights_[i] != 1) return false;
      }
      return true;
    }
    case FamilyKind::Affine:
      return x.affine().factor == 1;
  }
  fail(ErrorCode::Invalid, "unreachable");
}

bool ScaledMonoid::equivalent_mod_kernel(const MonoidElement& s,
                                         const MonoidElement& t) const {
  require_kind(s);
  require_kind(t);
  switch (kind_) {
    case FamilyKind::Free: {
      // s*a = t*b forces a prefix relation; the leftover must lie in ker N.
      const auto check = [&](const MonoidElement& shorter,
                             const MonoidElement& longer) {
        auto u = left_divide(shorter, longer);
        return u.has_value() && kernel_member(*u);
      };
      return check(s, t) || check(t, s);
    }
    case FamilyKind::Abelian: {
      const Exponents &a = s.exponents(), &b = t.exponents();
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (weights_[i] != 1 && a[i] != b[i]) return false;
      }
      return true;
    }
    case FamilyKind::Affine: {
      const AffinePair &a = s.affine(), &b = t.affine();
      return a.factor == b.factor &&
             (a.offset - b.offset) % a.factor == 0;
    }
  }
  fail(ErrorCode::Invalid, "unreachable");
}

Ternary ScaledMonoid::equivalent_bounded(const MonoidElement& s,
                                         const MonoidElement& t,
                                         std::size_t size_bound) const {
  const auto kernel = enumerate_kernel(size_bound);
  std::set<std::string> left;
  for (const auto& a : kernel) left.insert(to_string(multiply(s, a)));
  for (const auto& b : kernel) {
    if (left.count(to_string(multiply(t, b))) != 0) return Ternary::True;
  }
  return Ternary::Undecided;
}

std::vector<std::size_t> ScaledMonoid::free_kernel_generators() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] == 1) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> ScaledMonoid::abelian_kernel_coords() const {
  return free_kernel_generators();
}

std::vector<ClassRep> ScaledMonoid::class_representatives(
    const mpq_class& cutoff, std::size_t class_limit) const {
  std::vector<ClassRep> reps;
  if (cutoff < 1) return reps;
  const auto guard = [&]() {
    if (reps.size() > class_limit) {
      fail(ErrorCode::BoundExceeded, "class count exceeds the configured limit");
    }
  };
  switch (kind_) {
    case FamilyKind::Free: {
      const std::size_t k1 = free_kernel_generators().size();
      const std::size_t k2 = weights_.size() - k1;
      if (k2 == 0) {
        // S = ker N: a single class, represented by the empty word.
        reps.push_back({identity(), 1});
        return reps;
      }
      mpq_class min_big = 0;
      for (const auto& w : weights_) {
        if (w > 1 && (min_big == 0 || w < min_big)) min_big = w;
      }
      if (k1 > 0) {
        if (cutoff < min_big) {
          reps.push_back({identity(), 1});
          return reps;
        }
        // Cores g^i * x (weight-one prefix runs) are pairwise inequivalent,
        // so every value >= min_big carries infinitely many classes.
        fail(ErrorCode::BoundExceeded,
             "infinitely many classes below cutoff (weight-one generator)");
      }
      // All weights > 1: classes are single words; breadth-first by length.
      std::vector<std::pair<Word, mpq_class>> level = {{Word{}, 1}};
      reps.push_back({identity(), 1});
      while (!level.empty()) {
        std::vector<std::pair<Word, mpq_class>> next;
        for (const auto& [w, v] : level) {
          for (std::uint32_t i = 0; i < weights_.size(); ++i) {
            mpq_class nv = v * weights_[i];
            if (nv > cutoff) continue;
            Word nw = w;
            nw.push_back(i);
            reps.push_back({MonoidElement{nw}, nv});
            guard();
            next.emplace_back(std::move(nw), std::move(nv));
          }
        }
        level = std::move(next);
      }
      break;
    }
    case FamilyKind::Abelian: {
      // Representatives are supported on weight > 1 coordinates.
      std::vector<std::size_t> big;
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] != 1) big.push_back(i);
      }
      Exponents current(weights_.size(), 0);
      const std::function<void(std::size_t, mpq_class)> rec =
          [&](std::size_t pos, mpq_class value) {
            if (pos == big.size()) {
              reps.push_back({MonoidElement{current}, value});
              guard();
              return;
            }
            mpq_class v = value;
            for (std::int64_t e = 0;; ++e) {
              if (v > cutoff) break;
              current[big[pos]] = e;
              rec(pos + 1, v);
              v *= weights_[big[pos]];
            }
            current[big[pos]] = 0;
          };
      rec(0, 1);
      break;
    }
    case FamilyKind::Affine: {
      const mpz_class amax = floor_div(cutoff.get_num(), cutoff.get_den());
      for (mpz_class a = 1; a <= amax; ++a) {
        for (mpz_class r = 0; r < a; ++r) {
          reps.push_back({MonoidElement{AffinePair{r, a}}, mpq_class(a)});
          guard();
        }
      }
      break;
    }
  }
  std::sort(reps.begin(), reps.end(), [&](const ClassRep& x, const ClassRep& y) {
    const int c = cmp(x.value, y.value);
    if (c != 0) return c < 0;
    return payload_compare(x.representative, y.representative) < 0;
  });
  return reps;
}

std::vector<ValueCount> ScaledMonoid::class_value_counts(
    const mpq_class& cutoff) const {
  std::map<mpq_class, mpz_class> totals;
  if (cutoff < 1) return {};
  switch (kind_) {
    case FamilyKind::Free: {
      const std::size_t k1 = free_kernel_generators().size();
      const std::size_t k2 = weights_.size() - k1;
      if (k2 == 0) {
        totals[1] = 1;
        break;
      }
      mpq_class min_big = 0;
      for (const auto& w : weights_) {
        if (w > 1 && (min_big == 0 || w < min_big)) min_big = w;
      }
      if (k1 > 0) {
        if (cutoff < min_big) {
          totals[1] = 1;
          break;
        }
        fail(ErrorCode::Divergent,
             "infinitely many classes share a value below the cutoff");
      }
      std::map<mpq_class, mpz_class> level;
      level[1] = 1;
      while (!level.empty()) {
        for (const auto& [v, c] : level) totals[v] += c;
        std::map<mpq_class, mpz_class> next;
        for (const auto& [v, c] : level) {
          for (const auto& w : weights_) {
            mpq_class nv = v * w;
            if (nv <= cutoff) next[nv] += c;
          }
        }
        level = std::move(next);
      }
      break;
    }
    case FamilyKind::Abelian: {
      totals[1] = 1;
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] == 1) continue;
        std::map<mpq_class, mpz_class> next;
        for (const auto& [v, c] : totals) {
          mpq_class nv = v;
          while (nv <= cutoff) {
            next[nv] += c;
            nv *= weights_[i];
          }
        }
        totals = std::move(next);
      }
      break;
    }
    case FamilyKind::Affine: {
      const mpz_class amax = floor_div(cutoff.get_num(), cutoff.get_den());
      for (mpz_class a = 1; a <= amax; ++a) totals[mpq_class(a)] = a;
      break;
    }
  }
  std::vector<ValueCount> out;
  out.reserve(totals.size());
  for (auto& [v, c] : totals) out.push_back({v, c});
  return out;
}

KernelPair ScaledMonoid::solve_pq(const MonoidElement& x,
                                  const MonoidElement& y) const {
  if (!equivalent_mod_kernel(x, y)) {
    fail(ErrorCode::NotEquivalent, "elements are not scale-equivalent");
  }
  switch (kind_) {
    case FamilyKind::Free: {
      if (auto u = left_divide(x, y)) return {*u, identity()};
      auto u = left_divide(y, x);
      return {identity(), *u};
    }
    case FamilyKind::Abelian: {
      const Exponents &a = x.exponents(), &b = y.exponents();
      Exponents p(a.size()), q(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        p[i] = std::max<std::int64_t>(b[i] - a[i], 0);
        q[i] = std::max<std::int64_t>(a[i] - b[i], 0);
      }
      return {MonoidElement{std::move(p)}, MonoidElement{std::move(q)}};
    }
    case FamilyKind::Affine: {
      const AffinePair &a = x.affine(), &b = y.affine();
      const mpz_class k = (b.offset - a.offset) / a.factor;
      if (k >= 0) {
        return {MonoidElement{AffinePair{k, 1}}, MonoidElement{AffinePair{0, 1}}};
      }
      return {MonoidElement{AffinePair{0, 1}},
              MonoidElement{AffinePair{-k, 1}}};
    }
  }
  fail(ErrorCode::Invalid, "unreachable");
}

ScaleConditionReport ScaledMonoid::scale_condition_check(
    const mpq_class& value_bound, std::size_t size_bound) const {
  ScaleConditionReport report;
  const auto elements = enumerate_elements(value_bound, size_bound);
  const auto kernel = enumerate_kernel(size_bound);
  for (const auto& s : elements) {
    for (const auto& t : kernel) {
      ++report.pairs_checked;
      const LcmResult r = lcm(s, t);
      std::optional<MonoidElement> u;
      if (!r.disjoint) u = left_divide(s, r.element);
      if (r.disjoint || !u.has_value() || !kernel_member(*u)) {
        report.pass = false;
        report.witness_s = s;
        report.witness_t = t;
        report.detail =
            r.disjoint
                ? "sS and tS are disjoint for kernel t"
                : "lcm exists but does not lie in s * ker N";
        report.detail += " (s=" + to_string(s) + ", t=" + to_string(t) + ")";
        return report;
      }
    }
  }
  return report;
}

bool ScaledMonoid::kernel_abelian() const {
  if (kind_ != FamilyKind::Free) return true;
  return free_kernel_generators().size() <= 1;
}

std::size_t ScaledMonoid::kernel_rank() const {
  if (!kernel_abelian()) {
    fail(ErrorCode::NonAbelianKernel,
         "kernel is a nonabelian free monoid (>= 2 weight-one generators)");
  }
  switch (kind_) {
    case FamilyKind::Free: return free_kernel_generators().size();
    case FamilyKind::Abelian: return abelian_kernel_coords().size();
    case FamilyKind::Affine: return 1;
  }
  return 0;
}

std::vector<mpz_class> ScaledMonoid::kernel_exponent(
    const MonoidElement& x) const {
  if (!kernel_member(x)) {
    fail(ErrorCode::NonKernel, "element is not in ker N");
  }
  const std::size_t rank = kernel_rank();
  std::vector<mpz_class> out(rank, 0);
  switch (kind_) {
    case FamilyKind::Free:
      if (rank == 1) out[0] = static_cast<long>(x.word().size());
      break;
    case FamilyKind::Abelian: {
      const auto coords = abelian_kernel_coords();
      for (std::size_t i = 0; i < coords.size(); ++i) {
        out[i] = static_cast<long>(x.exponents()[coords[i]]);
      }
      break;
    }
    case FamilyKind::Affine:
      out[0] = x.affine().offset;
      break;
  }
  return out;
}

std::vector<MonoidElement> ScaledMonoid::enumerate_elements(
    const mpq_class& value_bound, std::size_t size_bound) const {
  std::vector<MonoidElement> out;
  switch (kind_) {
    case FamilyKind::Free: {
      std::vector<std::pair<Word, mpq_class>> level = {{Word{}, 1}};
      out.push_back(identity());
      for (std::size_t len = 1; len <= size_bound; ++len) {
        std::vector<std::pair<Word, mpq_class>> next;
        for (const auto& [w, v] : level) {
          for (std::uint32_t i = 0; i < weights_.size(); ++i) {
            mpq_class nv = v * weights_[i];
            if (nv > value_bound) continue;
            Word nw = w;
            nw.push_back(i);
            out.push_back(MonoidElement{nw});
            next.emplace_back(std::move(nw), std::move(nv));
          }
        }
        level = std::move(next);
      }
      break;
    }
    case FamilyKind::Abelian: {
      Exponents current(weights_.size(), 0);
      const std::function<void(std::size_t, mpq_class)> rec =
          [&](std::size_t pos, mpq_class value) {
            if (pos == weights_.size()) {
              out.push_back(MonoidElement{current});
              return;
            }
            mpq_class v = value;
            for (std::int64_t e = 0; e <= static_cast<std::int64_t>(size_bound);
                 ++e) {
              if (v > value_bound) break;
              current[pos] = e;
              rec(pos + 1, v);
              v *= weights_[pos];
            }
            current[pos] = 0;
          };
      rec(0, 1);
      break;
    }
    case FamilyKind::Affine: {
      const mpz_class amax =
          floor_div(value_bound.get_num(), value_bound.get_den());
      for (mpz_class a = 1; a <= amax; ++a) {
        for (mpz_class b = 0; b <= static_cast<long>(size_bound); ++b) {
          out.push_back(MonoidElement{AffinePair{b, a}});
        }
      }
      break;
    }
  }
  return out;
}

std::vector<MonoidElement> ScaledMonoid::enumerate_kernel(
    std::size_t size_bound) const {
  std::vector<MonoidElement> out;
  switch (kind_) {
    case FamilyKind::Free: {
      const auto gens = free_kernel_generators();
      std::vector<Word> level = {Word{}};
      out.push_back(identity());
      for (std::size_t len = 1; len <= size_bound && !gens.empty(); ++len) {
        std::vector<Word> next;
        for (const auto& w : level) {
          for (std::size_t g : gens) {
            Word nw = w;
            nw.push_back(static_cast<std::uint32_t>(g));
            out.push_back(MonoidElement{nw});
            next.push_back(std::move(nw));
          }
        }
        level = std::move(next);
      }
      break;
    }
    case FamilyKind::Abelian: {
      const auto coords = abelian_kernel_coords();
      Exponents current(weights_.size(), 0);
      const std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == coords.size()) {
          out.push_back(MonoidElement{current});
          return;
        }
        for (std::int64_t e = 0; e <= static_cast<std::int64_t>(size_bound);
             ++e) {
          current[coords[pos]] = e;
          rec(pos + 1);
        }
        current[coords[pos]] = 0;
      };
      rec(0);
      break;
    }
    case FamilyKind::Affine:
      for (mpz_class b = 0; b <= static_cast<long>(size_bound); ++b) {
        out.push_back(MonoidElement{AffinePair{b, 1}});
      }
      break;
  }
  return out;
}

std::string ScaledMonoid::to_string(const MonoidElement& x) const {
  switch (kind_) {
    case FamilyKind::Free: {
      const Word& w = x.word();
      if (w.empty()) return "e";
      std::string s;
      for (std::uint32_t letter : w) {
        if (weights_.size() <= 26) {
          s.push_back(static_cast<char>('a' + letter));
        } else {
          if (!s.empty()) s.push_back('.');
          s += "g" + std::to_string(letter);
        }
      }
      return s;
    }
    case FamilyKind::Abelian: {
      std::string s = "(";
      const Exponents& e = x.exponents();
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i != 0) s += ",";
        s += std::to_string(e[i]);
      }
      return s + ")";
    }
    case FamilyKind::Affine: {
      const AffinePair& p = x.affine();
      return "(" + p.offset.get_str() + "," + p.factor.get_str() + ")";
    }
  }
  return "?";
}

}  // namespace crystalkit
