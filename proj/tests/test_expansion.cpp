#include <doctest.h>

#include <cmath>

#include "minorforge/expansion.hpp"
#include "minorforge/generators.hpp"
#include "minorforge/traversal.hpp"
#include "oracles.hpp"

using namespace minorforge;

TEST_CASE("exact vertex expansion examples") {
  const ExpansionReport tri = vertex_expansion_exact(families::complete(3));
  CHECK(*tri.alpha_exact == doctest::Approx(2.0));
  REQUIRE(tri.witness_cut);
  CHECK(tri.witness_cut->size() == 1);
  CHECK(*vertex_expansion_exact(families::path(3)).alpha_exact == doctest::Approx(1.0));
  CHECK(*vertex_expansion_exact(families::cycle(4)).alpha_exact == doctest::Approx(1.0));
  CHECK(std::isinf(*vertex_expansion_exact(Graph(1)).alpha_exact));
  CHECK_THROWS_AS(vertex_expansion_exact(Graph(exact_limit() + 1)), Error);
}

TEST_CASE("exact expansion matches brute force, spectral bound stays below") {
  Rng rng(1);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(13));
    const Graph g = oracle::random_gnp(n, rng.uniform(), rng);
    const ExpansionReport r = vertex_expansion_exact(g);
    CHECK(*r.alpha_exact == doctest::Approx(oracle::vertex_expansion(g)));
    CHECK(r.alpha_spectral_lower <= *r.alpha_exact + 1e-9);
    REQUIRE(r.witness_cut);
    CHECK(static_cast<int>(r.witness_cut->size()) <= n / 2);
    CHECK(boundary_size(g, *r.witness_cut) == r.witness_boundary);
  }
}

TEST_CASE("spectral expansion lower bound") {
  CHECK(spectral_expansion_lower(families::complete(4)) == doctest::Approx(2.0 / 3.0));
  CHECK(spectral_expansion_lower(families::cycle(4)) == doctest::Approx(0.5));
  CHECK(spectral_expansion_lower(Graph::from_edges(4, {{0, 1}, {2, 3}})) == doctest::Approx(0.0));
}

TEST_CASE("sparse cut search") {
  const Graph bridge = families::two_triangles_bridge();
  const SparseCutResult r = find_sparse_cut(bridge, all_vertices(6), 1.0);
  REQUIRE(r.cut);
  CHECK(r.exact);
  const VertexSet left{0, 1, 2};
  const VertexSet right{3, 4, 5};
  CHECK((std::includes(left.begin(), left.end(), r.cut->begin(), r.cut->end()) ||
         std::includes(right.begin(), right.end(), r.cut->begin(), r.cut->end())));
  CHECK(boundary_size(bridge, *r.cut, all_vertices(6)) < 1.0 * static_cast<double>(r.cut->size()));

  const SparseCutResult k4 = find_sparse_cut(families::complete(4), all_vertices(4), 1.0);
  CHECK_FALSE(k4.cut);
  CHECK(k4.exact);
  CHECK_FALSE(find_sparse_cut(families::petersen(), std::vector<int>{3}, 0.5).cut);
}

TEST_CASE("heuristic sparse cut on large sets") {
  // Two random 4-regular halves joined by one edge: the sweep must find the split.
  Rng rng(4);
  const Graph a = generate_random_regular(30, 4, rng);
  const Graph b = generate_random_regular(30, 4, rng);
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  for (const Edge& e : b.edges()) edges.push_back({e.u + 30, e.v + 30});
  edges.push_back({0, 30});
  const Graph g = Graph::from_edges(60, edges);
  const SparseCutResult r = find_sparse_cut(g, all_vertices(60), 0.2);
  CHECK_FALSE(r.exact);
  REQUIRE(r.cut);
  CHECK(boundary_size(g, *r.cut, all_vertices(60)) < 0.2 * static_cast<double>(r.cut->size()));

  const Graph split = Graph::from_edges(60, std::vector<Edge>(edges.begin(), edges.end() - 1));
  const SparseCutResult comp = find_sparse_cut(split, all_vertices(60), 0.2);
  REQUIRE(comp.cut);
  CHECK(comp.cut->size() == 30);
}

TEST_CASE("fix expansion") {
  const Graph bridge = families::two_triangles_bridge();
  const FixExpansionResult f = fix_expansion(bridge, all_vertices(6), {}, 0.5);
  CHECK(f.c == VertexSet{3, 4, 5});
  CHECK(f.a == VertexSet{0, 1, 2});
  CHECK(f.moved.size() == 1);
  CHECK(f.certified);

  const FixExpansionResult k4 = fix_expansion(families::complete(4), all_vertices(4), {}, 0.5);
  CHECK(k4.c == all_vertices(4));
  CHECK(k4.a.empty());
  const FixExpansionResult none = fix_expansion(bridge, {}, std::vector<int>{1}, 0.5);
  CHECK(none.c.empty());
  CHECK(none.a == VertexSet{1});

  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(12));
    const Graph g = oracle::random_gnp(n, 0.15 + 0.4 * rng.uniform(), rng);
    const double beta = 0.25 + 0.5 * rng.uniform();
    const FixExpansionResult r = fix_expansion(g, all_vertices(n), {}, beta);
    CHECK(set_union(r.c, r.a) == all_vertices(n));
    VertexSet c = all_vertices(n);
    for (const VertexSet& u : r.moved) {
      CHECK(boundary_size(g, u, c) < beta * static_cast<double>(u.size()));
      c = set_difference(c, u);
    }
    if (r.c.size() >= 2) {
      const auto h = induced_subgraph(g, r.c);
      CHECK(*vertex_expansion_exact(h.graph).alpha_exact >= beta - 1e-12);
    }
    const FixExpansionResult again = fix_expansion(g, r.c, r.a, beta);
    CHECK(again.c == r.c);
    CHECK(again.moved.empty());
  }
}

TEST_CASE("numeric bounds") {
  CHECK(separator_lower_bound(1.0 / 3.0, 300) == doctest::Approx(25.0));
  CHECK(separator_lower_bound(1e-12, 100) == doctest::Approx(0.0));
  CHECK(separator_lower_bound(1.0, 12) == doctest::Approx(2.0));
  CHECK(diameter_upper_bound(1.0, 16) == 7);
  CHECK(diameter_upper_bound(1.0, 2) == 1);
  CHECK(c_alpha(1.0) == doctest::Approx(5.0));
}

TEST_CASE("diameter bound holds on random expanders") {
  Rng rng(55);
  int checked = 0;
  while (checked < 50) {
    const int n = 6 + 2 * static_cast<int>(rng.below(8));
    const Graph g = generate_random_regular(n, 3 + static_cast<int>(rng.below(2)), rng);
    const double alpha = *vertex_expansion_exact(g).alpha_exact;
    if (alpha <= 0) continue;
    ++checked;
    CHECK(diameter(g) <= diameter_upper_bound(alpha, n));
  }
}

TEST_CASE("short paths survive removing a small set") {
  Rng rng(66);
  int checked = 0;
  for (int attempt = 0; attempt < 4000 && checked < 100; ++attempt) {
    const int n = 10 + 2 * static_cast<int>(rng.below(6));
    const Graph g = generate_random_regular(n, 4 + static_cast<int>(rng.below(3)), rng);
    const double alpha = *vertex_expansion_exact(g).alpha_exact;
    if (alpha <= 0) continue;
    std::vector<int> perm = all_vertices(n);
    rng.shuffle(std::span<int>(perm));
    const int s = 1;
    const int need = static_cast<int>(std::ceil(2.0 * s / alpha));
    if (s + 2 * need > n) continue;
    const std::vector<int> sset(perm.begin(), perm.begin() + s);
    const std::vector<int> tset(perm.begin() + s, perm.begin() + s + need);
    const std::vector<int> uset(perm.begin() + s + need, perm.begin() + s + 2 * need);
    std::vector<char> allowed(static_cast<std::size_t>(n), 1);
    for (int v : sset) allowed[static_cast<std::size_t>(v)] = 0;
    const auto dist = bfs_distances(g, tset, allowed);
    int best = kInf;
    for (int v : uset) best = std::min(best, dist[static_cast<std::size_t>(v)]);
    ++checked;
    CHECK(best <= c_alpha(alpha / 2) * std::log2(static_cast<double>(n)));
  }
  CHECK(checked == 100);
}
