#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "kholag/braid.hpp"
#include "kholag/complex.hpp"
#include "kholag/error.hpp"
#include "kholag/khovanov.hpp"
#include "kholag/lee.hpp"
#include "kholag/transverse.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace kholag;

namespace {

// C_0 = <a (q=0), b (q=2)>, C_1 = <c (q=2)>, d(a) = 2c, d(b) = c.
FilteredComplex small_complex() {
  SparseMatrix d0(1, 2);
  d0.add(0, 0, 2);
  d0.add(0, 1, 1);
  return FilteredComplex(0, {{0, 2}, {2}}, {d0, SparseMatrix(0, 1)});
}

oracle::DenseCube to_dense(const FilteredComplex& c) {
  oracle::DenseCube out;
  out.min_degree = c.min_degree();
  for (int j = c.min_degree(); j <= c.max_degree(); ++j) {
    out.quantum.push_back(c.quantum(j));
    const auto d = c.differential(j);
    std::vector<std::vector<long>> m(d.rows(), std::vector<long>(d.cols(), 0));
    for (int col = 0; col < d.cols(); ++col)
      for (const auto& e : d.column(col)) m[e.row][col] = e.value;
    out.d.push_back(std::move(m));
    out.gens.emplace_back(c.size(j));
  }
  return out;
}

std::vector<long> as_long(const Chain& z) { return {z.coeffs.begin(), z.coeffs.end()}; }

// Reorders the generators of every degree by a random permutation.
FilteredComplex permuted(const FilteredComplex& c, std::mt19937& rng) {
  std::vector<std::vector<int>> perm;
  for (int j = c.min_degree(); j <= c.max_degree(); ++j) {
    std::vector<int> p(c.size(j));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    perm.push_back(p);
  }
  std::vector<std::vector<int>> quantum;
  std::vector<SparseMatrix> diffs;
  for (int j = c.min_degree(); j <= c.max_degree(); ++j) {
    const int k = j - c.min_degree();
    std::vector<int> q(c.size(j));
    for (int i = 0; i < c.size(j); ++i) q[perm[k][i]] = c.quantum(j)[i];
    quantum.push_back(q);
    const auto d = c.differential(j);
    SparseMatrix m(d.rows(), d.cols());
    for (int col = 0; col < d.cols(); ++col)
      for (const auto& e : d.column(col)) m.add(perm[k + 1][e.row], perm[k][col], e.value);
    diffs.push_back(m);
  }
  return FilteredComplex(c.min_degree(), quantum, diffs);
}

}  // namespace

TEST_SUITE("complex") {

TEST_CASE("construction validates d^2 and the filtration") {
  SparseMatrix d0(1, 1);
  d0.add(0, 0, 1);
  CHECK_THROWS_AS(FilteredComplex(0, {{2}, {0}}, {d0, SparseMatrix(0, 1)}), IntegrityError);
  SparseMatrix a(1, 1), b(1, 1);
  a.add(0, 0, 1);
  b.add(0, 0, 1);
  CHECK_THROWS_AS(FilteredComplex(0, {{0}, {0}, {0}}, {a, b, SparseMatrix(0, 1)}), IntegrityError);
  CHECK_NOTHROW(small_complex());
  CHECK_FALSE(small_complex().is_homogeneous());
}

TEST_CASE("homology of the small complex") {
  const auto h = homology(small_complex(), Grading::homological);
  CHECK(h.free_rank(0, 0) == 1);
  CHECK(h.at(0, 1).is_zero());
  CHECK_THROWS_AS(homology(small_complex()), DomainError);
}

TEST_CASE("class_is_zero") {
  const auto kh = build_khovanov_complex(braid_closure(parse_braid("1:")));
  CHECK(class_is_zero(kh.complex(), kh.zero_chain(0)));
  CHECK_FALSE(class_is_zero(kh.complex(), kh.generator(0, 0)));
  const auto stab = braid_closure(parse_braid("2: -1"));
  const auto c = build_khovanov_complex(stab);
  CHECK(class_is_zero(c.complex(), psi_cycle(stab, c).chain));

  // 2c is a boundary over Z; c is not a boundary integrally only if d has no unit entry.
  const auto s = small_complex();
  CHECK(class_is_zero(s, Chain{1, {1}}));
  CHECK_THROWS_AS(class_is_zero(s, Chain{0, {1, 0}}), DomainError);
}

TEST_CASE("integral versus rational boundaries") {
  SparseMatrix d0(1, 1);
  d0.add(0, 0, 2);
  FilteredComplex c(0, {{0}, {0}}, {d0, SparseMatrix(0, 1)});
  CHECK_FALSE(class_is_zero(c, Chain{1, {1}}));
  CHECK(class_is_zero_rational(c, Chain{1, {1}}));
}

TEST_CASE("subquotients") {
  const auto lee = build_lee_complex(braid_closure(parse_braid("2: 1 1 1")));
  const auto& c = lee.complex();
  SUBCASE("full range is the whole complex") {
    const auto all = subquotient(c, -1000, 1000);
    CHECK(dump_json(all) == dump_json(c));
  }
  SUBCASE("iterated subquotients compose") {
    for (int a = -3; a <= 9; a += 2)
      for (int b = a + 2; b <= 11; b += 2)
        for (int a2 = a - 2; a2 <= b; a2 += 2)
          for (int b2 = a2 + 2; b2 <= b + 2; b2 += 2) {
            const int lo = std::max(a, a2), hi = std::min(b, b2);
            if (lo >= hi) continue;
            const auto twice = subquotient(subquotient(c, a, b), a2, b2);
            CHECK(dump_json(twice) == dump_json(subquotient(c, lo, hi)));
          }
  }
  SUBCASE("unknot slice at sl") {
    const auto u = build_lee_complex(braid_closure(parse_braid("1:")));
    const auto s = subquotient(u.complex(), -1, 1);
    CHECK(s.total_size() == 1);
    CHECK(s.quantum(0) == std::vector<int>{-1});
  }
  CHECK_THROWS_AS(subquotient(c, 3, 3), DomainError);
}

TEST_CASE("homology is invariant under generator permutations") {
  std::mt19937 rng(7);
  for (const char* s : {"2: 1 1 1", "3: 1 -2 1 -2", "2: 1 1"}) {
    const auto kh = build_khovanov_complex(braid_closure(parse_braid(s)));
    const auto h = homology(kh.complex());
    for (int t = 0; t < 5; ++t) CHECK(homology(permuted(kh.complex(), rng)) == h);
    const auto lee = build_lee_complex(braid_closure(parse_braid(s)));
    const auto hl = homology(lee.complex(), Grading::homological);
    for (int t = 0; t < 3; ++t) CHECK(homology(permuted(lee.complex(), rng), Grading::homological) == hl);
  }
}

TEST_CASE("filtration grading") {
  SUBCASE("unknot") {
    const auto u = build_lee_complex(braid_closure(parse_braid("1:")));
    CHECK(filtration_grading(u.complex(), u.generator(0, 0)) == -1);
    CHECK(filtration_grading(u.complex(), psi_tilde(braid_closure(parse_braid("1:")), u).chain) == -1);
  }
  SUBCASE("zero class") {
    const auto s = small_complex();
    CHECK_THROWS_AS(filtration_grading(s, Chain{1, {1}}), ZeroClassError);
  }
  SUBCASE("right trefoil psi-tilde") {
    const auto d = braid_closure(parse_braid("2: 1 1 1"));
    const auto lee = build_lee_complex(d);
    CHECK(filtration_grading(lee.complex(), psi_tilde(d, lee).chain) == 1);
  }
  SUBCASE("agrees with the dense oracle on perturbed representatives") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (const auto& e : testing_support::corpus_knots()) {
      if (e.braid.letters.size() > 6) continue;
      const auto d = braid_closure(e.braid);
      const auto lee = build_lee_complex(d);
      const auto dense = to_dense(lee.complex());
      const Vertex v = oriented_vertex(d);
      const int n = oriented_resolution(d).circle_count;
      for (Labels mask = 0; mask < (Labels{1} << n); ++mask) {
        Chain z = lee_product_chain(lee, v, mask);
        if (!is_cycle(lee.complex(), z)) continue;
        const int j = z.degree;
        if (lee.complex().has_degree(j - 1)) {
          std::vector<std::int64_t> w(lee.complex().size(j - 1));
          for (auto& x : w) x = coeff(rng);
          z = z + apply_differential(lee.complex(), Chain{j - 1, w});
        }
        CAPTURE(e.name);
        CAPTURE(mask);
        if (class_is_zero_rational(lee.complex(), z)) {
          CHECK_THROWS_AS(filtration_grading(lee.complex(), z), ZeroClassError);
          continue;
        }
        const int got = filtration_grading(lee.complex(), z);
        CHECK(got == oracle::filtration_grading(dense, j, as_long(z)));
      }
    }
  }
}

TEST_CASE("JSON round trip") {
  const auto kh = build_khovanov_complex(braid_closure(parse_braid("3: 1 -2 1")));
  const auto text = dump_json(kh.complex());
  CHECK(dump_json(load_json(text)) == text);
  CHECK_THROWS_AS(load_json("[1, 2"), ParseError);
}

TEST_CASE("chain arithmetic") {
  Chain a{0, {1, 2}}, b{0, {1, -2}};
  CHECK((a + b) == Chain{0, {2, 0}});
  CHECK((a - a).is_zero());
  CHECK((-a) == Chain{0, {-1, -2}});
  const auto s = small_complex();
  CHECK(min_quantum_degree(s, Chain{0, {0, 3}}) == 2);
}

}
