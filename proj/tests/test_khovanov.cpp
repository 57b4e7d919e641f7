#include <doctest.h>

#include <chrono>
#include <random>

#include <nlohmann/json.hpp>

#include "kholag/braid.hpp"
#include "kholag/error.hpp"
#include "kholag/khovanov.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace kholag;

namespace {

oracle::Table to_table(const BigradedHomology& h) {
  oracle::Table t;
  for (const auto& [key, g] : h.groups) {
    if (g.is_zero()) continue;
    oracle::Group o;
    o.rank = g.free_rank;
    o.torsion.assign(g.torsion.begin(), g.torsion.end());
    t[key] = o;
  }
  return t;
}

BigradedHomology kh(const char* s) { return khovanov_homology(braid_closure(parse_braid(s))); }

}  // namespace

TEST_SUITE("khovanov") {

TEST_CASE("unknot") {
  const auto c = build_khovanov_complex(braid_closure(parse_braid("1:")));
  CHECK(c.vertex_count() == 1);
  CHECK(c.complex().size(0) == 2);
  CHECK(c.quantum_degree(0, 0) == -1);
  CHECK(c.quantum_degree(0, 1) == 1);
  const auto h = homology(c.complex());
  CHECK(h.free_rank(-1, 0) == 1);
  CHECK(h.free_rank(1, 0) == 1);
  CHECK(h.total_rank() == 2);
}

TEST_CASE("right trefoil table") {
  const auto h = kh("2: 1 1 1");
  CHECK(h.free_rank(1, 0) == 1);
  CHECK(h.free_rank(3, 0) == 1);
  CHECK(h.free_rank(5, 2) == 1);
  CHECK(h.free_rank(9, 3) == 1);
  CHECK(h.at(7, 3).torsion == std::vector<std::int64_t>{2});
  CHECK(h.total_rank() == 4);
  CHECK(build_khovanov_complex(braid_closure(parse_braid("2: 1 1 1"))).vertex_count() == 8);
}

TEST_CASE("Hopf link table") {
  const auto h = kh("2: 1 1");
  CHECK(h.free_rank(0, 0) == 1);
  CHECK(h.free_rank(2, 0) == 1);
  CHECK(h.free_rank(4, 2) == 1);
  CHECK(h.free_rank(6, 2) == 1);
  CHECK(h.total_rank() == 4);
}

TEST_CASE("agrees with the dense oracle on the corpus") {
  for (const auto& e : testing_support::corpus()) {
    if (e.braid.letters.size() > 8) continue;
    CAPTURE(e.name);
    CHECK(to_table(khovanov_homology(braid_closure(e.braid))) == oracle::khovanov(oracle::parse(e.text)));
  }
}

TEST_CASE("agrees with the oracle on random braids") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    std::uniform_int_distribution<int> strands(1, 4), len(0, 7), sign(0, 1);
    BraidWord b{strands(rng), {}};
    const int l = b.strands > 1 ? len(rng) : 0;
    for (int i = 0; i < l; ++i) {
      std::uniform_int_distribution<int> gen(1, b.strands - 1);
      b.letters.push_back(gen(rng) * (sign(rng) ? 1 : -1));
    }
    CAPTURE(b.to_string());
    CHECK(to_table(khovanov_homology(braid_closure(b))) == oracle::khovanov(oracle::parse(b.to_string())));
  }
}

TEST_CASE("graded Euler characteristic is the Jones polynomial") {
  for (const auto& e : testing_support::corpus()) {
    if (e.braid.letters.size() > 8) continue;
    CAPTURE(e.name);
    std::map<int, long> chi;
    for (auto [i, c] : graded_euler_characteristic(khovanov_homology(braid_closure(e.braid))))
      if (c) chi[i] = static_cast<long>(c);
    CHECK(chi == oracle::jones_unnormalized(oracle::parse(e.text)));
  }
  // The oracle's own tables satisfy the same identity.
  CHECK(oracle::euler_characteristic(oracle::khovanov(oracle::parse("2: 1 1 1"))) ==
        std::map<int, long>{{1, 1}, {3, 1}, {5, 1}, {9, -1}});
}

TEST_CASE("Ng's line") {
  CHECK(ng_line(kh("1:")) == -1);
  CHECK(ng_line(kh("2: 1 1 1")) == 1);
  CHECK(ng_line(kh("3: 1 -2 1 -2")) == -3);
  CHECK_THROWS_AS(ng_line(BigradedHomology{}), DomainError);
}

TEST_CASE("top obstruction") {
  CHECK(top_obstruction(kh("2: 1 1 1"), 1) == TopVerdict::consistent);
  CHECK(top_obstruction(kh("2: 1 1 1"), 0) == TopVerdict::obstructed);
  CHECK(top_obstruction(kh("1:"), -1) == TopVerdict::consistent);
  CHECK(std::string(to_string(TopVerdict::obstructed)) == "obstructed");
}

TEST_CASE("mirror duality") {
  CHECK(check_mirror_duality(kh("1:"), kh("1:")));
  CHECK(check_mirror_duality(kh("2: 1 1 1"), kh("2: -1 -1 -1")));
  CHECK(check_mirror_duality(kh("3: 1 -2 1 -2"), kh("3: 1 -2 1 -2")));
  CHECK_FALSE(check_mirror_duality(kh("2: 1 1 1"), kh("2: 1 1 1")));
  for (const auto& e : testing_support::corpus()) {
    CAPTURE(e.name);
    CHECK(check_mirror_duality(khovanov_homology(braid_closure(e.braid)),
                               khovanov_homology(braid_closure(e.braid.mirrored()))));
  }
}

TEST_CASE("PD input gives the same homology as the braid") {
  // Right trefoil from its standard PD code.
  const auto pd = from_pd({{1, 5, 2, 4}, {3, 1, 4, 6}, {5, 3, 6, 2}}, {1, 1, 1});
  const auto h = khovanov_homology(pd);
  const auto b = kh("2: 1 1 1");
  CHECK((h == b || h == khovanov_homology(mirror(braid_closure(parse_braid("2: 1 1 1"))))));
}

TEST_CASE("serialization") {
  const auto j = nlohmann::json::parse(homology_to_json(kh("2: 1 1 1")));
  CHECK(j.at("ng_line") == 1);
  CHECK(j.at("groups").size() == 5);
  const auto grid = homology_grid(kh("2: 1 1 1"));
  CHECK(grid.find("Z/2") != std::string::npos);
}

TEST_CASE("small diagrams are fast") {
  for (const char* s : {"1:", "2: 1 1", "2: 1 1 1", "2: -1 -1 -1", "3: 1 -2 1 -2"}) {
    const auto start = std::chrono::steady_clock::now();
    (void)kh(s);
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(1));
  }
}

TEST_CASE("crossing limit") {
  BraidWord big{2, std::vector<int>(kMaxCubeCrossings + 1, 1)};
  CHECK_THROWS_AS(build_khovanov_complex(braid_closure(big)), DomainError);
}

}
