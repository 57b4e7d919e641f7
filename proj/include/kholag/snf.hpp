#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "kholag/sparse.hpp"

namespace kholag {

// Rank and nontrivial invariant factors (all > 1, ascending, divisibility chain)
// of an integer matrix.
struct SmithForm {
  int rank = 0;
  std::vector<mpz_class> torsion;
};

// Sparse elimination on unit pivots chosen by a Markowitz-style rule, then a
// dense big-integer Smith reduction of whatever remains. Entries are tracked
// in 64-bit arithmetic and the whole computation is redone with GMP integers
// if anything overflows.
SmithForm smith_form(const SparseMatrix& m);
int rank(const SparseMatrix& m);

// True iff D x = z has an integer solution.
bool in_integer_image(const SparseMatrix& d, const std::vector<std::int64_t>& z);
// True iff D x = z has a rational solution.
bool in_rational_image(const SparseMatrix& d, const std::vector<std::int64_t>& z);

}  // namespace kholag
