#include <doctest.h>

#include <random>

#include "kholag/braid.hpp"
#include "kholag/khovanov.hpp"
#include "kholag/lee.hpp"
#include "kholag/transverse.hpp"
#include "support.hpp"

using namespace kholag;

namespace {

// A random conjugate of b, positively stabilized with probability 1/2 and
// conjugated again.
BraidWord random_transverse_isotopy(const BraidWord& b, std::mt19937& rng) {
  const int len = std::max<int>(1, static_cast<int>(b.letters.size()));
  BraidWord out = b.rotated(std::uniform_int_distribution<int>(0, len - 1)(rng));
  if (std::bernoulli_distribution(0.5)(rng)) {
    out = out.stabilized_positive();
    out = out.rotated(std::uniform_int_distribution<int>(0, static_cast<int>(out.letters.size()) - 1)(rng));
  }
  return out;
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("invariance under conjugation and positive stabilization") {
  std::mt19937 rng(4242);
  for (const auto& e : testing_support::corpus_knots()) {
    CAPTURE(e.name);
    const auto d = braid_closure(e.braid);
    const auto kh = khovanov_homology(d);
    const bool psi = psi_vanishes(d);
    const int s = s_invariant(d).s;
    for (int trial = 0; trial < 50; ++trial) {
      const auto b = random_transverse_isotopy(e.braid, rng);
      CAPTURE(b.to_string());
      const auto db = braid_closure(b);
      CHECK(khovanov_homology(db) == kh);
      CHECK(psi_vanishes(db) == psi);
      CHECK(s_invariant(db).s == s);
      CHECK(self_linking(b) == self_linking(e.braid));
    }
  }
}

TEST_CASE("negative stabilization kills psi and lowers sl") {
  for (const auto& e : testing_support::corpus_knots()) {
    if (e.braid.letters.size() > 7) continue;
    CAPTURE(e.name);
    BraidWord b{e.braid.strands + 1, e.braid.letters};
    b.letters.push_back(-e.braid.strands);
    CHECK(psi_vanishes(braid_closure(b)));
    CHECK(self_linking(b) == self_linking(e.braid) - 2);
    CHECK(khovanov_homology(braid_closure(b)) == khovanov_homology(braid_closure(e.braid)));
  }
}

TEST_CASE("Bennequin-type bound") {
  for (const auto& e : testing_support::corpus_knots()) {
    CAPTURE(e.name);
    const auto s = s_invariant(braid_closure(e.braid));
    CHECK(self_linking(e.braid) <= s.s - 1);
    CHECK(s.s_max - s.s_min == 2);
    CHECK(s.s % 2 == 0);
  }
}

}
