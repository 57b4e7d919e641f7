#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kholag/sparse.hpp"

namespace kholag {

// Finitely generated free Z-complex with cohomological differential
// d_j : C_j -> C_{j+1}. Each generator carries a quantum degree; the
// filtration is decreasing, F_m = span{generators with quantum degree >= m},
// and every differential entry must map a generator to generators of
// quantum degree >= its own.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  // quantum[k] lists generator degrees in homological degree min_degree + k;
  // differentials[k] maps degree min_degree + k to the next one. Validates
  // shapes, the filtration condition and d^2 = 0 (IntegrityError on failure).
  FilteredComplex(int min_degree, std::vector<std::vector<int>> quantum, std::vector<SparseMatrix> differentials);

  int min_degree() const { return min_degree_; }
  int max_degree() const { return min_degree_ + static_cast<int>(quantum_.size()) - 1; }
  bool has_degree(int j) const { return j >= min_degree_ && j <= max_degree(); }
  int size(int j) const;
  int total_size() const;
  const std::vector<int>& quantum(int j) const;
  // d_j : C_j -> C_{j+1}; a correctly shaped (possibly 0x0) matrix for any j.
  SparseMatrix differential(int j) const;

  // True when every differential entry preserves quantum degree exactly.
  bool is_homogeneous() const;

 private:
  int min_degree_ = 0;
  std::vector<std::vector<int>> quantum_;
  std::vector<SparseMatrix> differentials_;
};

struct Chain {
  int degree = 0;
  std::vector<std::int64_t> coeffs;

  bool is_zero() const;
  friend bool operator==(const Chain&, const Chain&) = default;
};

Chain operator+(const Chain& a, const Chain& b);
Chain operator-(const Chain& a, const Chain& b);
Chain operator-(const Chain& a);

Chain apply_differential(const FilteredComplex& c, const Chain& z);
bool is_cycle(const FilteredComplex& c, const Chain& z);
// Minimal quantum degree among nonzero coordinates (INT_MAX for the zero chain).
int min_quantum_degree(const FilteredComplex& c, const Chain& z);

struct HomologyGroup {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

// Homology indexed by (i, j) = (quantum, homological), the ordering used
// throughout this library. Homological-only results use i = 0 and set
// `bigraded` to false.
struct BigradedHomology {
  std::map<std::pair<int, int>, HomologyGroup> groups;
  bool bigraded = true;

  const HomologyGroup& at(int i, int j) const;
  int free_rank(int i, int j) const { return at(i, j).free_rank; }
  int total_rank() const;
  bool is_zero() const;
  // Same data keyed (h, q) = (homological, quantum), for comparison with
  // tables in the homological-first convention.
  std::map<std::pair<int, int>, HomologyGroup> by_h_q() const;
  friend bool operator==(const BigradedHomology&, const BigradedHomology&) = default;
};

enum class Grading { bigraded, homological };

// Bigraded mode requires a homogeneous complex (DomainError otherwise).
BigradedHomology homology(const FilteredComplex& c, Grading grading = Grading::bigraded);

// Whether the cycle z is a boundary over Z. DomainError if z is not a cycle.
bool class_is_zero(const FilteredComplex& c, const Chain& z);
// Same question over Q.
bool class_is_zero_rational(const FilteredComplex& c, const Chain& z);

// F_low C / F_high C together with the generator bookkeeping needed to push
// chains of C into it.
struct Subquotient {
  FilteredComplex complex;
  int low = 0;
  int high = 0;
  std::vector<std::vector<int>> source_index;  // per degree, kept generators of C

  Chain project(const Chain& z) const;
};

Subquotient subquotient_with_map(const FilteredComplex& c, int low, int high);
FilteredComplex subquotient(const FilteredComplex& c, int low, int high);

// max over representatives z + d(w) of their minimal quantum degree, over Q.
// ZeroClassError when [z] = 0.
int filtration_grading(const FilteredComplex& c, const Chain& z);

// {"min_degree": j0, "generators": [[q...], ...], "matrices": [[[row, col, v], ...], ...]}
std::string dump_json(const FilteredComplex& c);
FilteredComplex load_json(const std::string& text);

}  // namespace kholag
