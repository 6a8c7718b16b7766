#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace crystalkit {

// Dense matrix of arbitrary-precision integers, row-major. By convention the
// rows are relations acting on ℤ^cols (columns index generators).
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> data;

  static IntMatrix zero(std::size_t r, std::size_t c) {
    return IntMatrix{r, c, std::vector<mpz_class>(r * c, 0)};
  }
  static IntMatrix identity(std::size_t n) {
    IntMatrix m = zero(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  mpz_class& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const mpz_class& at(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix mat_transpose(const IntMatrix& a);
// Exact determinant of a square matrix (fraction-free elimination).
mpz_class mat_determinant(const IntMatrix& a);

struct SmithDecomposition {
  IntMatrix u;  // unimodular, rows x rows
  IntMatrix d;  // diagonal with divisibility chain, nonnegative entries
  IntMatrix v;  // unimodular, cols x cols
  std::vector<mpz_class> diagonal;  // min(rows, cols) entries, zeros last
  std::size_t rank = 0;             // number of nonzero diagonal entries
};

// U*A*V = D with d1 | d2 | ..., di >= 0, zeros trailing; |det U| = |det V| = 1.
SmithDecomposition smith_normal_form(const IntMatrix& a);

struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;  // entries >= 2, each divides the next

  friend bool operator==(const AbelianInvariants& a,
                         const AbelianInvariants& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

// Invariants of ℤ^cols / (subgroup generated by the rows of `relations`).
AbelianInvariants cokernel(const IntMatrix& relations);

// "0", "Z", "Z^2 + Z/2 + Z/4", ...
std::string abelian_to_string(const AbelianInvariants& g);

}  // namespace crystalkit
