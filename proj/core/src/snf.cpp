#include "crystalkit/snf.hpp"

#include <algorithm>
#include <sstream>

#include "crystalkit/error.hpp"

namespace crystalkit {

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) {
    fail(ErrorCode::Invalid, "matrix product dimension mismatch");
  }
  IntMatrix c = IntMatrix::zero(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) {
        c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  }
  return c;
}

IntMatrix mat_transpose(const IntMatrix& a) {
  IntMatrix t = IntMatrix::zero(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
  }
  return t;
}

mpz_class mat_determinant(const IntMatrix& a) {
  if (a.rows != a.cols) {
    fail(ErrorCode::Invalid, "determinant requires a square matrix");
  }
  const std::size_t n = a.rows;
  if (n == 0) return 1;
  IntMatrix m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t swap_row = k;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (m.at(i, k) != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row == k) return 0;
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m.at(k, j), m.at(swap_row, j));
      }
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = q;
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

namespace {

void add_row(IntMatrix& m, std::size_t dst, std::size_t src,
             const mpz_class& factor) {
  for (std::size_t j = 0; j < m.cols; ++j) {
    m.at(dst, j) += factor * m.at(src, j);
  }
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src,
             const mpz_class& factor) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    m.at(i, dst) += factor * m.at(i, src);
  }
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols; ++j) m.at(r, j) = -m.at(r, j);
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  SmithDecomposition s;
  s.d = a;
  s.u = IntMatrix::identity(a.rows);
  s.v = IntMatrix::identity(a.cols);
  IntMatrix& d = s.d;
  const std::size_t limit = std::min(a.rows, a.cols);

  for (std::size_t t = 0; t < limit; ++t) {
    for (;;) {
      // Move a smallest-magnitude nonzero entry of the trailing block to
      // position (t, t); finished with the whole matrix if none exists.
      std::size_t pi = t, pj = t;
      mpz_class best = 0;
      for (std::size_t i = t; i < d.rows; ++i) {
        for (std::size_t j = t; j < d.cols; ++j) {
          if (d.at(i, j) == 0) continue;
          mpz_class magnitude = abs(d.at(i, j));
          if (best == 0 || magnitude < best) {
            best = magnitude;
            pi = i;
            pj = j;
          }
        }
      }
      if (best == 0) {
        s.rank = t;
        goto done;
      }
      swap_rows(d, t, pi);
      swap_rows(s.u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(s.v, t, pj);

      // Reduce column t and row t by the pivot.
      bool dirty = false;
      for (std::size_t i = t + 1; i < d.rows; ++i) {
        if (d.at(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d.at(i, t).get_mpz_t(),
                   d.at(t, t).get_mpz_t());
        if (q != 0) {
          add_row(d, i, t, -q);
          add_row(s.u, i, t, -q);
        }
        if (d.at(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < d.cols; ++j) {
        if (d.at(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d.at(t, j).get_mpz_t(),
                   d.at(t, t).get_mpz_t());
        if (q != 0) {
          add_col(d, j, t, -q);
          add_col(s.v, j, t, -q);
        }
        if (d.at(t, j) != 0) dirty = true;
      }
      if (dirty) continue;  // smaller remainders exist; pick a new pivot

      // Row and column are clear; enforce the divisibility chain.
      bool fixed = false;
      for (std::size_t i = t + 1; i < d.rows && !fixed; ++i) {
        for (std::size_t j = t + 1; j < d.cols && !fixed; ++j) {
          if (d.at(i, j) % d.at(t, t) != 0) {
            add_row(d, t, i, 1);
            add_row(s.u, t, i, 1);
            fixed = true;
          }
        }
      }
      if (fixed) continue;

      if (d.at(t, t) < 0) {
        negate_row(d, t);
        negate_row(s.u, t);
      }
      break;
    }
    s.rank = t + 1;
  }

done:
  s.diagonal.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) s.diagonal.push_back(d.at(i, i));
  return s;
}

AbelianInvariants cokernel(const IntMatrix& relations) {
  SmithDecomposition s = smith_normal_form(relations);
  AbelianInvariants g;
  g.free_rank = relations.cols - s.rank;
  for (const mpz_class& x : s.diagonal) {
    if (x > 1) g.torsion.push_back(x);
  }
  std::sort(g.torsion.begin(), g.torsion.end());
  return g;
}

std::string abelian_to_string(const AbelianInvariants& g) {
  if (g.free_rank == 0 && g.torsion.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  if (g.free_rank == 1) {
    out << "Z";
    first = false;
  } else if (g.free_rank > 1) {
    out << "Z^" << g.free_rank;
    first = false;
  }
  for (const mpz_class& x : g.torsion) {
    if (!first) out << " + ";
    out << "Z/" << x.get_str();
    first = false;
  }
  return out.str();
}

}  // namespace crystalkit
