#include <doctest.h>

#include <numeric>

#include "minorforge/formulas.hpp"
#include "minorforge/generators.hpp"
#include "minorforge/matching.hpp"
#include "oracles.hpp"

using namespace minorforge;

namespace {

std::vector<char> bits(std::uint32_t mask, int m) {
  std::vector<char> a(static_cast<std::size_t>(std::max(m, 1)), 0);
  for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i)] = static_cast<char>((mask >> i) & 1u);
  return a;
}

bool cnf_satisfiable(const CnfFormula& f) {
  for (std::uint32_t mask = 0; mask < (1u << f.num_vars); ++mask) {
    if (evaluate(f, bits(mask, f.num_vars))) return true;
  }
  return false;
}

Graph random_small_graph(Rng& rng, int max_edges) {
  while (true) {
    const int n = 2 + static_cast<int>(rng.below(6));
    const Graph g = oracle::random_gnp(n, rng.uniform(), rng);
    if (g.num_edges() <= max_edges) return g;
  }
}

Formula random_formula(const Graph& g, Rng& rng) {
  const int n = g.num_vertices();
  std::vector<int> p(static_cast<std::size_t>(n));
  switch (rng.below(3)) {
    case 0:
      for (int& x : p) x = static_cast<int>(rng.below(2));
      return build_formula(FormulaKind::kTseitin, g, p);
    case 1:
      for (int v = 0; v < n; ++v) p[static_cast<std::size_t>(v)] = static_cast<int>(rng.below(g.degree(v) + 1));
      return build_formula(FormulaKind::kCard, g, p);
    default:
      return build_formula(FormulaKind::kPM, g);
  }
}

// Random restriction: constants, and literals of variables left alone.
Restriction random_restriction(int m, Rng& rng) {
  Restriction rho(m);
  std::vector<int> free_vars;
  for (int v = 0; v < m; ++v) {
    if (rng.bernoulli(0.4)) free_vars.push_back(v);
  }
  for (int v = 0; v < m; ++v) {
    if (std::find(free_vars.begin(), free_vars.end(), v) != free_vars.end()) continue;
    const auto roll = rng.below(4);
    if (roll == 0) continue;
    if (roll == 1 || free_vars.empty()) {
      rho.set(v, {rng.bernoulli(0.5) ? ImageKind::kOne : ImageKind::kZero, -1});
    } else {
      const int w = free_vars[rng.below(free_vars.size())];
      rho.set(v, {roll == 2 ? ImageKind::kPos : ImageKind::kNeg, w});
    }
  }
  return rho;
}

// The assignment of the original variables that alpha induces through rho.
std::vector<char> pull_back(const Restriction& rho, const std::vector<char>& alpha) {
  std::vector<char> beta = alpha;
  for (int v = 0; v < rho.num_vars; ++v) {
    const auto& image = rho.map[static_cast<std::size_t>(v)];
    if (!image) continue;
    switch (image->kind) {
      case ImageKind::kZero: beta[static_cast<std::size_t>(v)] = 0; break;
      case ImageKind::kOne: beta[static_cast<std::size_t>(v)] = 1; break;
      case ImageKind::kPos: beta[static_cast<std::size_t>(v)] = alpha[static_cast<std::size_t>(image->var)]; break;
      case ImageKind::kNeg: beta[static_cast<std::size_t>(v)] = !alpha[static_cast<std::size_t>(image->var)]; break;
    }
  }
  return beta;
}

std::vector<int> identity(int m) {
  std::vector<int> out(static_cast<std::size_t>(m));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

}  // namespace

TEST_CASE("formula examples") {
  const Graph c4 = families::cycle(4);
  CHECK(brute_force_satisfiable(build_formula(FormulaKind::kPM, c4)));

  int tseitin_models = 0;
  const Formula ts = build_formula(FormulaKind::kTseitin, c4, std::vector<int>{1, 1, 1, 1});
  for (std::uint32_t mask = 0; mask < 16; ++mask) tseitin_models += evaluate(ts, bits(mask, 4)) ? 1 : 0;
  CHECK(tseitin_models == 2);

  const Graph tri = families::cycle(3);
  CHECK(brute_force_satisfiable(build_formula(FormulaKind::kCard, tri, std::vector<int>{1, 1, 2})));
  CHECK_FALSE(brute_force_satisfiable(build_formula(FormulaKind::kPM, tri)));

  CHECK_THROWS_AS(build_formula(FormulaKind::kTseitin, tri, std::vector<int>{0, 2, 1}), Error);
  CHECK_THROWS_AS(build_formula(FormulaKind::kCard, tri, std::vector<int>{0, -1, 1}), Error);
  CHECK_THROWS_AS(build_formula(FormulaKind::kCard, tri, std::vector<int>{0, 1}), Error);
  const Formula over = build_formula(FormulaKind::kCard, tri, std::vector<int>{3, 1, 1});
  CHECK(over.trivially_false);
  CHECK(over.out_of_range == std::vector<int>{0});
  CHECK(to_cnf(over).clauses == std::vector<std::vector<int>>{{}});
}

TEST_CASE("CNF encodings") {
  const Graph edge = families::path(2);
  const CnfFormula single = to_cnf(build_formula(FormulaKind::kPM, edge));
  CHECK(single.clauses == std::vector<std::vector<int>>{{1}, {1}});
  CHECK(to_dimacs(single) == "p cnf 1 2\n1 0\n1 0\n");
  CHECK(cnf_satisfiable(single));

  CHECK_FALSE(cnf_satisfiable(to_cnf(build_formula(FormulaKind::kPM, families::cycle(3)))));
  const CnfFormula c4 = to_cnf(build_formula(FormulaKind::kCard, families::cycle(4), std::vector<int>{2, 2, 2, 2}));
  CHECK(evaluate(c4, std::vector<char>{1, 1, 1, 1}));

  const CnfFormula k5 = to_cnf(build_formula(FormulaKind::kTseitin, families::complete(5), std::vector<int>(5, 1)));
  CHECK(k5.clauses.size() == 5 * 8);
  for (const auto& clause : k5.clauses) CHECK(clause.size() == 4);

  const std::string comment[] = {"seed 7"};
  const std::string text = to_dimacs(c4, comment);
  CHECK(text.rfind("c seed 7\np cnf 4 ", 0) == 0);
  const CnfFormula back = from_dimacs(text);
  CHECK(back.num_vars == c4.num_vars);
  CHECK(back.clauses == c4.clauses);
  CHECK_THROWS_AS(from_dimacs("p cnf 2 1\n1 3 0\n"), Error);
  CHECK_THROWS_AS(from_dimacs("p cnf 2 2\n1 2 0\n"), Error);

  CHECK_THROWS_AS(to_cnf(build_formula(FormulaKind::kPM, families::star(17))), Error);
  CHECK_NOTHROW(to_cnf(build_formula(FormulaKind::kPM, families::star(16))));
}

TEST_CASE("CNF agrees with the formula on every assignment") {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = random_small_graph(rng, 12);
    const Formula f = random_formula(g, rng);
    const CnfFormula cnf = to_cnf(f);
    CHECK(cnf.num_vars == g.num_edges());
    for (const auto& clause : cnf.clauses) {
      std::vector<int> sorted = clause;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      CHECK(clause.empty() == f.trivially_false);
    }
    for (std::uint32_t mask = 0; mask < (1u << g.num_edges()); ++mask) {
      const auto a = bits(mask, g.num_edges());
      if (evaluate(cnf, a) != evaluate(f, a)) {
        FAIL_CHECK("CNF and formula disagree, trial " << trial);
        break;
      }
    }
  }
}

TEST_CASE("Card satisfiability and the parity count") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_small_graph(rng, 12);
    std::vector<int> b(static_cast<std::size_t>(g.num_vertices()));
    for (int v = 0; v < g.num_vertices(); ++v) b[static_cast<std::size_t>(v)] = static_cast<int>(rng.below(g.degree(v) + 1));
    const bool sat = brute_force_satisfiable(build_formula(FormulaKind::kCard, g, b));
    CHECK(sat == oracle::card_satisfiable(g, b));
    CHECK(sat == solve_card(g, b).has_value());
    if (std::accumulate(b.begin(), b.end(), 0) % 2 == 1) CHECK_FALSE(sat);
  }
}

TEST_CASE("polynomial text") {
  const Formula pm = build_formula(FormulaKind::kPM, families::path(3));
  CHECK(to_polynomials(pm) ==
        "x0 = 1\nx0 + x1 = 1\nx1 = 1\n"
        "x0^2 = x0\nx0 + ~x0 = 1\nx1^2 = x1\nx1 + ~x1 = 1\n");
  const Formula ts = build_formula(FormulaKind::kTseitin, families::path(2), std::vector<int>{1, 0});
  const std::string text = to_polynomials(ts);
  CHECK(text.rfind("x0 = 1\n~x0 = 1\n", 0) == 0);
}

TEST_CASE("clique lift") {
  const Lift tri = lift_tseitin_to_pm(families::cycle(3));
  CHECK(tri.graph.num_vertices() == 9);
  CHECK(tri.graph.num_edges() == 12);
  const Graph k5g = families::complete(5);
  const Lift k5 = lift_tseitin_to_pm(k5g);
  CHECK(k5.graph.num_vertices() == 25);
  CHECK(k5.graph.num_edges() == 60);
  int lifted = 0;
  for (std::size_t e = 0; e < k5.provenance.size(); ++e) {
    const auto& p = k5.provenance[e];
    const Edge& edge = k5.graph.edge(static_cast<int>(e));
    if (p.kind == LiftEdgeKind::kClique) {
      CHECK(edge.u / 5 == p.source);
      CHECK(edge.v / 5 == p.source);
    } else {
      ++lifted;
      const Edge& orig = k5g.edge(p.source);
      CHECK(edge.u / 5 == orig.u);
      CHECK(edge.v / 5 == orig.v);
      CHECK(edge.u % 5 != 0);
      CHECK(edge.v % 5 != 0);
    }
  }
  CHECK(lifted == 10);
  // Each non-star clique vertex carries exactly one lifted edge.
  for (int x = 0; x < 25; ++x) CHECK(k5.graph.degree(x) == (x % 5 == 0 ? 4 : 5));
  CHECK_FALSE(max_matching(k5.graph).size() * 2 == 25);
  CHECK_THROWS_AS(lift_tseitin_to_pm(families::path(3)), Error);
}

TEST_CASE("lift preserves satisfiability on small circulants") {
  for (int n : {5, 6, 7}) {
    const Graph g = families::circulant(n, {1, 2});
    const bool tseitin = brute_force_satisfiable(build_formula(FormulaKind::kTseitin, g, std::vector<int>(n, 1)));
    const Lift lift = lift_tseitin_to_pm(g);
    const bool pm = is_perfect_matching(lift.graph, max_matching(lift.graph));
    CHECK(tseitin == pm);
    CHECK(tseitin == (n % 2 == 0));
  }
}

TEST_CASE("restrictions") {
  const Graph g = families::path(3);
  Restriction fix(2);
  fix.set(0, {ImageKind::kZero, -1});
  const Formula pm = apply_restriction(build_formula(FormulaKind::kPM, g), fix);
  CHECK(pm.trivially_false);

  CnfFormula clause{2, {{1, 2}}};
  Restriction one(2);
  one.set(0, {ImageKind::kOne, -1});
  CHECK(apply_restriction(clause, one).clauses.empty());

  Restriction chain(3);
  chain.set(0, {ImageKind::kPos, 1});
  chain.set(1, {ImageKind::kNeg, 2});
  CHECK_THROWS_AS(check_chains(chain), Error);
  CHECK_THROWS_AS(apply_restriction(build_formula(FormulaKind::kPM, families::cycle(3)), chain), Error);
  Restriction self(3);
  self.set(0, {ImageKind::kPos, 1});
  self.set(1, {ImageKind::kPos, 1});
  CHECK_NOTHROW(check_chains(self));

  // x and ~x at one vertex cancel.
  const Formula c4 = build_formula(FormulaKind::kPM, families::cycle(4));
  Restriction alt(4);
  alt.set(1, {ImageKind::kNeg, 0});
  alt.set(3, {ImageKind::kNeg, 2});
  const Formula r = apply_restriction(c4, alt);
  CHECK_FALSE(r.trivially_false);
  CHECK(r.constraints.size() <= 2);
}

TEST_CASE("restriction semantics by brute force") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_small_graph(rng, 12);
    const Formula f = random_formula(g, rng);
    const Restriction rho = random_restriction(g.num_edges(), rng);
    const Formula rf = apply_restriction(f, rho);
    const CnfFormula cnf = to_cnf(f);
    const CnfFormula rcnf = apply_restriction(cnf, rho);
    const auto same = identity(g.num_edges());
    CHECK(formulas_equivalent(apply_restriction(rf, rho), rf, EquivalenceMode::kSyntactic, same).equivalent);
    for (std::uint32_t mask = 0; mask < (1u << g.num_edges()); ++mask) {
      const auto alpha = bits(mask, g.num_edges());
      const auto beta = pull_back(rho, alpha);
      const bool want = evaluate(f, beta);
      if (evaluate(rf, alpha) != want || evaluate(rcnf, alpha) != want) {
        FAIL_CHECK("restriction changes semantics, trial " << trial);
        break;
      }
    }
  }
}

TEST_CASE("equivalence") {
  const Graph c4 = families::cycle(4);
  const Formula pm = build_formula(FormulaKind::kPM, c4);
  CHECK(formulas_equivalent(pm, pm, EquivalenceMode::kSyntactic).equivalent);
  CHECK(formulas_equivalent(pm, build_formula(FormulaKind::kCard, c4, std::vector<int>(4, 1)),
                            EquivalenceMode::kSyntactic)
            .equivalent);

  const Graph tri = families::cycle(3);
  const Formula a = build_formula(FormulaKind::kPM, tri);
  const Formula b = build_formula(FormulaKind::kTseitin, tri, std::vector<int>(3, 1));
  CHECK_FALSE(formulas_equivalent(a, b, EquivalenceMode::kSyntactic).equivalent);
  const EquivalenceReport sem = formulas_equivalent(a, b, EquivalenceMode::kSemantic);
  CHECK(sem.equivalent);
  CHECK_FALSE(sem.left_satisfiable);
  CHECK_FALSE(sem.right_satisfiable);

  const Formula c5 = build_formula(FormulaKind::kPM, families::cycle(5));
  const Formula c6 = build_formula(FormulaKind::kPM, families::cycle(6));
  CHECK_FALSE(formulas_equivalent(c5, c6, EquivalenceMode::kSemantic).equivalent);
  CHECK_THROWS_AS(formulas_equivalent(build_formula(FormulaKind::kPM, families::complete(7)), pm,
                                      EquivalenceMode::kSemantic),
                  Error);

  const Formula comp = complement(build_formula(FormulaKind::kCard, c4, std::vector<int>{2, 1, 2, 1}));
  CHECK(formulas_equivalent(comp, build_formula(FormulaKind::kCard, c4, std::vector<int>{0, 1, 0, 1}),
                            EquivalenceMode::kSyntactic, identity(4))
            .equivalent);
}

TEST_CASE("restriction from an embedding") {
  // Triangle on 0,1,2 with paths 0-1, 1-2 and 0-4-3-2; 5..12 carry a
  // perfect matching.
  std::vector<Edge> edges = {{0, 1}, {1, 2}, {0, 4}, {3, 4}, {2, 3}, {0, 2}, {5, 6}, {7, 8}, {9, 10},
                             {11, 12}, {5, 7}, {6, 8}, {9, 11}, {10, 12}, {3, 5}, {4, 9}, {0, 11}, {1, 6}};
  const Graph g = Graph::from_edges(13, edges);
  TopologicalEmbedding emb;
  emb.sigma = {0, 1, 2};
  emb.paths = {Path{{0, 1}}, Path{{1, 2}}, Path{{0, 4, 3, 2}}};
  std::vector<int> m;
  for (auto [u, v] : std::vector<Edge>{{5, 6}, {7, 8}, {9, 10}, {11, 12}}) m.push_back(*g.edge_id(u, v));
  const Restriction rho = restriction_from_embedding(g, emb, m);

  const int e01 = *g.edge_id(0, 1);
  CHECK(*rho.map[static_cast<std::size_t>(e01)] == Image{ImageKind::kPos, e01});
  const int e04 = *g.edge_id(0, 4);
  CHECK(*rho.map[static_cast<std::size_t>(*g.edge_id(3, 4))] == Image{ImageKind::kNeg, e04});
  CHECK(*rho.map[static_cast<std::size_t>(*g.edge_id(2, 3))] == Image{ImageKind::kPos, e04});
  CHECK(rho.map[static_cast<std::size_t>(*g.edge_id(0, 2))]->kind == ImageKind::kZero);
  CHECK(rho.map[static_cast<std::size_t>(m[0])]->kind == ImageKind::kOne);

  const Formula residual = apply_restriction(build_formula(FormulaKind::kPM, g), rho);
  const Graph h = families::cycle(3);
  std::vector<int> renaming(static_cast<std::size_t>(g.num_edges()), -1);
  renaming[static_cast<std::size_t>(e01)] = *h.edge_id(0, 1);
  renaming[static_cast<std::size_t>(*g.edge_id(1, 2))] = *h.edge_id(1, 2);
  renaming[static_cast<std::size_t>(e04)] = *h.edge_id(0, 2);
  const Formula pm_h = build_formula(FormulaKind::kPM, h);
  const EquivalenceReport rep = formulas_equivalent(residual, pm_h, EquivalenceMode::kSemantic, renaming);
  CHECK(rep.equivalent);
  CHECK_FALSE(rep.left_satisfiable);
  CHECK(formulas_equivalent(residual, pm_h, EquivalenceMode::kSyntactic, renaming).equivalent);

  TopologicalEmbedding even = emb;
  even.paths[2] = Path{{0, 4, 3}};
  CHECK_THROWS_AS(restriction_from_embedding(g, even, m), Error);
  std::vector<int> short_m(m.begin(), m.end() - 1);
  CHECK_THROWS_AS(restriction_from_embedding(g, emb, short_m), Error);
}

TEST_CASE("Card to PM through the 2-factor layers") {
  Rng rng(3);
  const OplusSample one = oplus_sample(21, {8}, rng);
  const CardReduction id = card_to_pm_restriction(one, 1);
  CHECK(id.rho.assigned() == 0);
  CHECK(id.g0 == one.graph);

  const OplusSample s = oplus_sample(101, {6, 2}, rng);
  const CardReduction red = card_to_pm_restriction(s, 3);
  CHECK_FALSE(red.flipped);
  CHECK(red.rho.assigned() == 101);
  CHECK(red.g0.regular_degree() == 6);
  const Formula residual = apply_restriction(build_formula(FormulaKind::kCard, s.graph, std::vector<int>(101, 3)), red.rho);
  const Formula pm0 = build_formula(FormulaKind::kPM, red.g0);
  CHECK(formulas_equivalent(residual, pm0, EquivalenceMode::kSyntactic, red.renaming).equivalent);
  CHECK(formulas_equivalent(residual, pm0, EquivalenceMode::kSyntactic).equivalent);

  const CardReduction flip = card_to_pm_restriction(s, 5);
  CHECK(flip.flipped);
  CHECK(flip.effective_t == 3);
  const Formula card5 = build_formula(FormulaKind::kCard, s.graph, std::vector<int>(101, 5));
  const Formula flipped = apply_restriction(complement(card5), flip.rho);
  CHECK(formulas_equivalent(flipped, pm0, EquivalenceMode::kSyntactic, flip.renaming).equivalent);

  const CardReduction top = card_to_pm_restriction(one, 7);
  CHECK(top.flipped);
  CHECK(formulas_equivalent(complement(build_formula(FormulaKind::kCard, one.graph, std::vector<int>(21, 7))),
                            build_formula(FormulaKind::kPM, one.graph), EquivalenceMode::kSyntactic)
            .equivalent);

  CHECK_THROWS_AS(card_to_pm_restriction(s, 1), Error);
  CHECK_THROWS_AS(card_to_pm_restriction(s, 2), Error);
}
