#include <doctest.h>

#include <cmath>

#include "minorforge/embedding.hpp"
#include "minorforge/expansion.hpp"
#include "minorforge/generators.hpp"
#include "minorforge/spectral.hpp"
#include "oracles.hpp"

using namespace minorforge;

namespace {

bool paths_disjoint(const std::vector<Path>& paths) {
  VertexSet all;
  std::size_t total = 0;
  for (const Path& p : paths) {
    all.insert(all.end(), p.vertices.begin(), p.vertices.end());
    total += p.vertices.size();
  }
  return normalized(all).size() == total;
}

MultiGraph cube_graph() { return MultiGraph::from_graph(families::hypercube(3)); }

}  // namespace

TEST_CASE("embedding parameters") {
  const EmbedParams p = embed_parameters(1.0 / 3, 1000, EmbedMode::kPaper);
  CHECK(p.beta == doctest::Approx(1.0 / 12).epsilon(1e-12));
  CHECK(p.gamma == doctest::Approx(1.0 / 39).epsilon(1e-12));
  for (int d = 1; d <= 5; ++d) CHECK(p.r(d) == 49 * d - 1);
  CHECK_FALSE(p.non_paper);
  CHECK(p.s == static_cast<int>(std::ceil(18 * c_alpha(1.0 / 24) * 12 * std::log2(1000.0))));

  const EmbedParams e = embed_parameters(1.0 / 3, 1000, EmbedMode::kEngineering);
  CHECK(e.non_paper);
  CHECK(e.s == static_cast<int>(std::ceil(2 * std::log2(1000.0))));
  CHECK(e.r(3) == 9);
  CHECK_THROWS_AS(embed_parameters(0, 10, EmbedMode::kPaper), Error);
}

TEST_CASE("vertex-disjoint paths examples") {
  const int zero[] = {0};
  const int two[] = {2};
  const auto arcs = vertex_disjoint_paths(families::cycle(4), zero, two, 2, {}, Disjointness::kInternal);
  REQUIRE(arcs.size() == 2);
  for (const Path& p : arcs) {
    CHECK(p.front() == 0);
    CHECK(p.back() == 2);
    CHECK(p.length() == 2);
  }
  CHECK(arcs[0].vertices[1] != arcs[1].vertices[1]);
  CHECK(vertex_disjoint_paths(families::cycle(4), zero, two, 2).size() == 1);

  const int leaves[] = {1, 2};
  const int third[] = {3};
  CHECK(vertex_disjoint_paths(families::star(4), leaves, third, 2).size() == 1);
  CHECK(vertex_disjoint_paths(families::star(4), leaves, third, 2, {}, Disjointness::kInternal).size() == 1);

  Rng rng(12);
  const Graph p = families::petersen();
  for (int t = 0; t < 20; ++t) {
    VertexSet perm = all_vertices(10);
    rng.shuffle(std::span<int>(perm));
    const VertexSet a(perm.begin(), perm.begin() + 3);
    const VertexSet b(perm.begin() + 3, perm.begin() + 6);
    const auto paths = vertex_disjoint_paths(p, a, b, 3);
    REQUIRE(paths.size() == 3);
    CHECK(paths_disjoint(paths));
    for (const Path& q : paths) CHECK(is_simple_path(p, q));
  }
}

TEST_CASE("vertex-disjoint paths match Menger") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    const Graph g = oracle::random_gnp(n, 0.15 + 0.5 * rng.uniform(), rng);
    VertexSet a, b;
    for (int v = 0; v < n; ++v) {
      if (rng.bernoulli(0.3)) a.push_back(v);
      if (rng.bernoulli(0.3)) b.push_back(v);
    }
    if (a.empty()) a.push_back(0);
    if (b.empty()) b.push_back(n - 1);
    const auto paths = vertex_disjoint_paths(g, a, b, n);
    CHECK(static_cast<int>(paths.size()) == oracle::menger_number(g, a, b));
    CHECK(paths_disjoint(paths));
    for (const Path& p : paths) {
      CHECK(is_simple_path(g, p));
      CHECK(contains(a, p.front()));
      CHECK(contains(b, p.back()));
      for (std::size_t i = 1; i < p.vertices.size(); ++i) CHECK_FALSE(contains(a, p.vertices[i]));
      for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) CHECK_FALSE(contains(b, p.vertices[i]));
    }
    const int capped = static_cast<int>(vertex_disjoint_paths(g, a, b, 1).size());
    CHECK(capped == std::min(1, oracle::menger_number(g, a, b)));
  }
}

TEST_CASE("parity paths between sets") {
  const Graph tri = families::complete(3);
  const VertexSet all{0, 1, 2};
  const int a[] = {0};
  const int b[] = {1};
  const auto odd = parity_path_between_sets(tri, all, a, b, 1);
  REQUIRE(odd.path);
  CHECK(odd.path->vertices == std::vector<int>{0, 1});
  const auto even = parity_path_between_sets(tri, all, a, b, 0);
  REQUIRE(even.path);
  CHECK(even.path->vertices == std::vector<int>{0, 2, 1});
  const int two[] = {2};
  CHECK_FALSE(parity_path_between_sets(families::cycle(4), all_vertices(4), a, two, 1).path);

  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(9));
    const Graph g = oracle::random_gnp(n, 0.2 + 0.5 * rng.uniform(), rng);
    VertexSet c;
    for (int v = 0; v < n; ++v) {
      if (v < 2 || rng.bernoulli(0.8)) c.push_back(v);
    }
    const InducedSubgraph h = induced_subgraph(g, c);
    const oracle::ParityLengths truth = oracle::simple_path_lengths(h.graph, 0);
    const int from[] = {0};
    const int to[] = {1};
    for (int parity = 0; parity < 2; ++parity) {
      const auto r = parity_path_between_sets(g, c, from, to, parity);
      const int expect = parity == 0 ? truth.even[1] : truth.odd[1];
      CHECK((r.path ? r.path->length() : kInf) == expect);
      if (r.path) {
        CHECK(is_simple_path(g, *r.path));
        for (int v : r.path->vertices) CHECK(contains(c, v));
      }
    }
  }
}

TEST_CASE("cross examples") {
  Rng rng(3);
  const Graph k20 = families::complete(20);
  const CrossResult k = find_cross(k20, all_vertices(20), 2, 1, 0.25, 6, rng);
  CHECK(k.cross.branches.size() == 2);
  CHECK(cross_violations(k20, k.cross, 1).empty());
  CHECK(k.c.size() == 17);

  const Graph bridge = families::two_triangles_bridge();
  try {
    find_cross(bridge, all_vertices(6), 2, 2, 0.25, 6, rng);
    CHECK(false);
  } catch (const Error& e) {
    CHECK((e.code() == ErrorCode::kNoCenter || e.code() == ErrorCode::kBudget));
  }

  Rng gen(200);
  const Graph g = generate_random_regular(200, 16, gen);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng r(seed);
    const CrossResult res = find_cross(g, all_vertices(200), 8, 6, 1.0 / 12, 6, r);
    CHECK(res.cross.branches.size() == 8);
    CHECK(cross_violations(g, res.cross, 6).empty());
    CHECK(set_union(res.c, res.cross.vertices()) == all_vertices(200));
    CHECK(disjoint(res.c, res.cross.vertices()));
  }
}

TEST_CASE("cross verifier catches faults") {
  const Graph g = families::complete(6);
  Cross c{0, {{1, 2}, {3, 4}}};
  CHECK(cross_violations(g, c, 2).empty());
  Cross overlap{0, {{1, 2}, {2, 3}}};
  CHECK_FALSE(cross_violations(g, overlap, 2).empty());
  CHECK_FALSE(cross_violations(families::path(5), Cross{0, {{2, 4}}}, 2).empty());
  CHECK_FALSE(cross_violations(g, Cross{0, {{0, 1}}}, 2).empty());
}

TEST_CASE("unembedding follows the removal rules") {
  // H: star with center 0 and leaves 1, 2; edges 0-1 and 0-2.
  const MultiGraph h(3, {{0, 1}, {0, 2}});
  const int n = 30;
  EmbedState s = EmbedState::initial(n, h);
  s.vertices[0] = EmbeddedVertex{Cross{0, {{1, 2}, {3, 4}, {5, 6}, {7, 8}}}, {0, 1, -1, -1}};
  s.vertices[1] = EmbeddedVertex{Cross{10, {{11, 12}}}, {0}};
  s.vertices[2] = EmbeddedVertex{Cross{20, {{21, 22}}}, {1}};
  s.paths[0] = Path{{0, 1, 14, 11, 10}};
  s.paths[1] = Path{{0, 3, 15, 16, 21, 20}};
  s.edge_sets[0] = {14};
  s.edge_sets[1] = {15, 16};
  VertexSet used{0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 12, 14, 15, 16, 20, 21, 22};
  s.c = set_difference(all_vertices(n), used);
  REQUIRE(partition_violations(s).empty());

  const EmbedState after = unembed_vertex(s, h, 0);
  CHECK_FALSE(after.embedded(0));
  CHECK(after.a == VertexSet{5, 6, 7, 8});
  CHECK(after.a_prime == VertexSet{0, 1, 2, 3, 4, 14, 15, 16});
  CHECK_FALSE(after.paths[0]);
  CHECK_FALSE(after.paths[1]);
  CHECK(after.vertices[1]->branch_edge[0] == -1);
  CHECK(partition_violations(after).empty());

  // A vertex without embedded edges: every branch to A, the center to A'.
  const EmbedState leaf = unembed_vertex(after, h, 1);
  CHECK(leaf.a == VertexSet{5, 6, 7, 8, 11, 12});
  CHECK(contains(leaf.a_prime, 10));
  CHECK(partition_violations(leaf).empty());
  CHECK_THROWS_AS(unembed_vertex(leaf, h, 1), Error);

  EmbedState broken = s;
  broken.c.push_back(1);
  normalize(broken.c);
  CHECK_FALSE(partition_violations(broken).empty());
}

TEST_CASE("ledger checks") {
  const Graph g = families::complete(10);
  const MultiGraph h(1, {});
  EmbedState s = EmbedState::initial(10, h);
  CHECK(check_ledger(g, s, 0.1, 6, 10).violations.empty());
  s.a = {0};
  s.c = set_difference(all_vertices(10), s.a);
  CHECK_FALSE(check_ledger(g, s, 0.1, 6, 10).violations.empty());
  CHECK_FALSE(check_ledger(g, s, 0.1, 6, 5).violations.empty());
}

TEST_CASE("verifier catches injected faults") {
  const Graph g = families::complete(6);
  const MultiGraph h(3, {{0, 1}, {1, 2}});
  TopologicalEmbedding emb{{0, 1, 2}, {Path{{0, 3, 1}}, Path{{1, 4, 2}}}, {}, {}};
  const int even[] = {0, 0};
  CHECK(verify_embedding(h, g, emb, even).ok);

  TopologicalEmbedding shared = emb;
  shared.paths[1] = Path{{1, 3, 2}};
  const VerifyReport r = verify_embedding(h, g, shared, even);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations.front().find("paths 0 and 1") != std::string::npos);

  const int odd[] = {1, 0};
  const VerifyReport p = verify_embedding(h, g, emb, odd);
  CHECK_FALSE(p.ok);
  CHECK(p.violations.front().find("parity") != std::string::npos);

  TopologicalEmbedding through = emb;
  through.paths[0] = Path{{0, 2, 1}};
  CHECK_FALSE(verify_embedding(h, g, through, even).ok);
  TopologicalEmbedding wrong_end = emb;
  wrong_end.paths[0] = Path{{0, 3}};
  CHECK_FALSE(verify_embedding(h, g, wrong_end, {}).ok);
  TopologicalEmbedding twice = emb;
  twice.sigma = {0, 0, 2};
  CHECK_FALSE(verify_embedding(h, g, twice, {}).ok);
}

TEST_CASE("embedding a single edge") {
  Rng gen(5);
  const Graph g = generate_random_regular(100, 8, gen);
  const MultiGraph h(2, {{0, 1}});
  const EmbedParams params = embed_parameters(spectral_expansion_lower(g), 100, EmbedMode::kEngineering, 0.5, 1.0);
  const int odd[] = {1};
  Rng rng(1);
  const EmbedOutcome out = embed_graph(h, g, params, odd, rng);
  REQUIRE(out.embedding);
  CHECK(verify_embedding(h, g, *out.embedding, odd).ok);
  CHECK(out.embedding->achieved[0] == 1);
  CHECK(partition_violations(out.state).empty());
  CHECK(out.diagnostics.hypothesis == "unchecked");
}

TEST_CASE("embedding a triangle into the Petersen graph") {
  const Graph p = families::petersen();
  const MultiGraph tri = MultiGraph::from_graph(families::complete(3));
  const int odd[] = {1, 1, 1};
  const double alpha = *vertex_expansion_exact(p).alpha_exact;
  const EmbedParams params = embed_parameters(alpha, 10, EmbedMode::kEngineering, 0.25, 1.0);
  REQUIRE(params.s == 1);
  REQUIRE(params.r(2) == 2);
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const EmbedOutcome out = embed_graph(tri, p, params, odd, rng);
    if (!out.embedding) {
      CHECK_FALSE(out.diagnostics.failure.empty());
      continue;
    }
    ++successes;
    CHECK(verify_embedding(tri, p, *out.embedding, odd).ok);
  }
  MESSAGE("triangle into Petersen: " << successes << "/10 seeds");

  // The witness: a 5-cycle split into arcs of lengths 1, 1 and 3.
  std::optional<std::vector<int>> five;
  for (int a = 0; a < 10 && !five; ++a) {
    const auto lengths = oracle::simple_path_lengths(p, a);
    for (int b : p.neighbors(a)) {
      if (lengths.even[static_cast<std::size_t>(b)] == 4) {
        const auto path = shortest_parity_path(p, a, b, 0);
        if (path.path && path.path->length() == 4) five = path.path->vertices;
        break;
      }
    }
  }
  REQUIRE(five);
  const std::vector<int>& c = *five;
  const TopologicalEmbedding witness{{c[0], c[4], c[3]}, {Path{{c[0], c[4]}}, Path{{c[0], c[1], c[2], c[3]}}, Path{{c[4], c[3]}}}, {}, {}};
  CHECK(tri.edge(0).u == 0);
  CHECK(tri.edge(0).v == 1);
  CHECK(tri.edge(1).v == 2);
  CHECK(verify_embedding(tri, p, witness, odd).ok);
}

TEST_CASE("embedding the cube into a random regular graph") {
  const MultiGraph h = cube_graph();
  std::vector<int> odd(static_cast<std::size_t>(h.num_edges()), 1);
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Rng gen(seed);
    const Graph g = generate_random_regular(400, 16, gen);
    const EmbedParams params = embed_parameters(spectral_expansion_lower(g), 400, EmbedMode::kEngineering, 0.5, 1.0);
    Rng rng(seed + 100);
    const EmbedOutcome out = embed_graph(h, g, params, odd, rng);
    CHECK(partition_violations(out.state).empty());
    if (out.embedding) {
      ++successes;
      const VerifyReport rep = verify_embedding(h, g, *out.embedding, odd);
      CHECK(rep.ok);
      // Shared internal vertex injected into a real output.
      TopologicalEmbedding bad = *out.embedding;
      bad.paths[1].vertices[1] = bad.paths[0].vertices[1];
      CHECK_FALSE(verify_embedding(h, g, bad, odd).ok);
    } else {
      MESSAGE("seed " << seed << ": " << out.diagnostics.failure << " " << out.diagnostics.message);
    }
  }
  CHECK(successes >= 2);
}
