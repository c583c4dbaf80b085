#include <doctest.h>

#include "minorforge/generators.hpp"
#include "minorforge/matching.hpp"
#include "oracles.hpp"

using namespace minorforge;

TEST_CASE("maximum matching examples") {
  CHECK(max_matching(families::cycle(4)).size() == 2);
  CHECK(max_matching(families::complete(3)).size() == 1);
  const Matching p = max_matching(families::petersen());
  CHECK(p.size() == 5);
  CHECK(is_perfect_matching(families::petersen(), p));
  CHECK(max_matching(Graph(3)).empty());
}

TEST_CASE("blossom equals brute force") {
  Rng rng(314);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const Graph g = oracle::random_gnp(n, rng.uniform(), rng);
    const Matching m = max_matching(g);
    CHECK(is_matching(g, m));
    CHECK(static_cast<int>(m.size()) == oracle::max_matching_size(g));
  }
}

TEST_CASE("card decisions") {
  const auto c4 = solve_card(families::cycle(4), std::vector<int>(4, 1));
  REQUIRE(c4);
  CHECK(verify_assignment(families::cycle(4), std::vector<int>(4, 1), *c4));

  const Graph tri = families::complete(3);  // edges ab=01, ac=02, bc=12
  const std::vector<int> b{1, 1, 2};
  const auto x = solve_card(tri, b);
  REQUIRE(x);
  CHECK(*x == EdgeAssignment{0, 1, 1});
  CHECK(verify_assignment(tri, b, *x));
  CHECK_FALSE(solve_card(tri, std::vector<int>{1, 1, 1}));
  CHECK_FALSE(solve_card(families::cycle(4), std::vector<int>{1, 1, 1, 2}));
}

TEST_CASE("verify assignment") {
  const Graph c4 = families::cycle(4);  // edges 01, 03, 12, 23
  const std::vector<int> ones(4, 1);
  CHECK(verify_assignment(c4, ones, EdgeAssignment{1, 0, 0, 1}));
  CHECK_FALSE(verify_assignment(c4, ones, EdgeAssignment{1, 1, 0, 0}));
  CHECK_THROWS_AS(verify_assignment(c4, ones, EdgeAssignment{1, 0}), Error);
}

TEST_CASE("card equals brute force") {
  Rng rng(2718);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(7));
    Graph g = oracle::random_gnp(n, rng.uniform(), rng);
    while (g.num_edges() > 15) g = oracle::random_gnp(n, 0.4, rng);
    std::vector<int> b(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      b[static_cast<std::size_t>(v)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.degree(v) + 1)));
    }
    if (trial % 4 == 0) b[0] += 1;
    const auto x = solve_card(g, b);
    CHECK(x.has_value() == oracle::card_satisfiable(g, b));
    if (x) CHECK(verify_assignment(g, b, *x));
  }
}

TEST_CASE("perfect matchings of random regular graphs") {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + 2 * static_cast<int>(rng.below(7));
    const int d = 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::min(4, n - 4))));
    const Graph g = generate_random_regular(n, d, rng);
    const bool brute = oracle::has_perfect_matching(g);
    const auto x = solve_card(g, std::vector<int>(static_cast<std::size_t>(n), 1));
    if (brute) CHECK(x.has_value());
  }
}
