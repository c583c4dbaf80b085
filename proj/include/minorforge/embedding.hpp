#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minorforge/graph.hpp"
#include "minorforge/rng.hpp"
#include "minorforge/traversal.hpp"

namespace minorforge {

enum class EmbedMode { kPaper, kEngineering };

const char* to_string(EmbedMode mode);

struct EmbedParams {
  EmbedMode mode = EmbedMode::kEngineering;
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
  int k = 6;
  int n = 0;
  /// Branch size.
  int s = 0;
  /// r(d) = ceil(r_mult * d + r_add); paper mode uses (1 + 4/beta) d - 1.
  double r_mult = 0;
  double r_add = 0;
  /// Spare branches grown by the cross search: r' = ceil(spare * r).
  double cross_spare = 0;
  /// Lower bound on the cross search's branch size.
  int cross_s_floor = 1;
  bool cross_center_spare = false;
  /// Length cap on each edge path (kInf = none).
  int path_max_len = kInf;
  /// Set whenever a constant deviates from its paper-mode value.
  bool non_paper = false;

  int r(int degree) const;
};

/// All derived constants. Engineering mode uses s = ceil(sigma log n),
/// r(d) = ceil(rho d), two spare branches per wanted branch and no branch
/// size floor.
EmbedParams embed_parameters(double alpha, int n, EmbedMode mode, double sigma = 2.0, double rho = 3.0);

struct Cross {
  int center = -1;
  std::vector<VertexSet> branches;

  VertexSet vertices() const;
};

/// Empty when valid; otherwise one message per broken condition.
std::vector<std::string> cross_violations(const Graph& g, const Cross& cross, int s);

struct CrossOptions {
  /// r' = ceil(spare * r); 0 selects 1 + 1/gamma.
  double spare = 2.0;
  /// Branches are grown with max(s, s_floor) vertices before trimming;
  /// -1 selects ceil(1/gamma).
  int s_floor = 1;
  /// Centers need degree >= r' in G[C] when set, else degree >= r.
  bool center_needs_spare = false;
  int center_attempts = 8;
};

struct CrossResult {
  Cross cross;
  /// C minus the cross.
  VertexSet c;
  /// Vertices the search discarded internally. They stay in C.
  VertexSet a_local;
  int grown = 0;
  int filtered = 0;
};

/// Grows spare connected s-sets in G[C], filters poorly expanding
/// families, then joins a high-degree center to r of them by disjoint
/// paths. Throws kNoCenter or kBudget.
CrossResult find_cross(const Graph& g, std::span<const int> c, int r, int s, double beta, int k, Rng& rng,
                       const CrossOptions& options = {});

enum class Disjointness {
  /// No two paths share any vertex.
  kFull,
  /// Paths may share endpoints in A or B; internal vertices are private.
  kInternal,
};

/// Up to `want` disjoint A-B paths; with kFull the count is
/// min(want, Menger number). Paths use only `allowed` vertices (all when
/// empty), start at their only A vertex and end at their only B vertex.
std::vector<Path> vertex_disjoint_paths(const Graph& g, std::span<const int> a, std::span<const int> b, int want,
                                        std::span<const char> allowed = {},
                                        Disjointness mode = Disjointness::kFull);

/// Shortest simple path inside G[C] from `from` to `to` with the given
/// length parity and at most max_len edges.
ParityPathResult parity_path_between_sets(const Graph& g, std::span<const int> c, std::span<const int> from,
                                          std::span<const int> to, int parity, int max_len = kInf);

inline constexpr int kAnyParity = -1;

struct EmbeddedVertex {
  Cross cross;
  /// H-edge served by each branch, or -1.
  std::vector<int> branch_edge;
};

struct EmbedState {
  int n = 0;
  VertexSet a;
  VertexSet a_prime;
  VertexSet c;
  std::vector<std::optional<EmbeddedVertex>> vertices;
  /// Full center-to-center path per embedded H-edge.
  std::vector<std::optional<Path>> paths;
  /// Vertices each edge path took out of C.
  std::vector<VertexSet> edge_sets;

  static EmbedState initial(int n, const MultiGraph& h);
  bool embedded(int x) const { return vertices[static_cast<std::size_t>(x)].has_value(); }
};

/// Messages for every way A, A', the embeddings and C fail to partition V.
std::vector<std::string> partition_violations(const EmbedState& state);

struct LedgerCheck {
  std::vector<std::string> violations;
};

/// |C| non-increasing and >= n(1 - 2/k), N(A, C) < beta|A| and
/// |A'| < beta|A|/2 when A is nonempty.
LedgerCheck check_ledger(const Graph& g, const EmbedState& state, double beta, int k, int previous_c);

/// Drops x's embedding: branches serving embedded edges go to A' with
/// those edges and the center, the rest go to A.
EmbedState unembed_vertex(EmbedState state, const MultiGraph& h, int x);

struct TopologicalEmbedding {
  std::vector<int> sigma;
  std::vector<Path> paths;
  std::vector<int> requested;
  std::vector<int> achieved;
};

struct PostMortem {
  bool alpha_certified = false;
  int discarded = 0;
  int neighborhood = 0;
  bool balanced = false;
  double separator_bound = 0;
  /// N(A) is a balanced separator below the lower bound of a certified
  /// expander.
  bool alarm = false;
};

struct EmbedDiagnostics {
  /// "", "budget", "no-center", "parity-routing", "iteration-cap", "invariant".
  std::string failure;
  std::string message;
  int crosses = 0;
  int unembeds = 0;
  int edge_paths = 0;
  std::vector<std::string> ledger_violations;
  std::vector<std::string> warnings;
  /// Max-degree robustness hypothesis: never checked.
  std::string hypothesis = "unchecked";
  int final_a = 0;
  int final_a_prime = 0;
  int final_c = 0;
  std::optional<PostMortem> post_mortem;
};

struct EmbedOutcome {
  std::optional<TopologicalEmbedding> embedding;
  EmbedDiagnostics diagnostics;
  EmbedState state;
};

struct EmbedOptions {
  CrossOptions cross;
  /// Outer iterations (vertex embeddings attempted) before giving up.
  int max_iterations = 0;
};

/// Embeds H as a topological minor of G. `parities` has one entry per H
/// edge (0, 1 or kAnyParity) or is empty.
EmbedOutcome embed_graph(const MultiGraph& h, const Graph& g, const EmbedParams& params, std::span<const int> parities,
                         Rng& rng, const EmbedOptions& options = {});

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> violations;
};

VerifyReport verify_embedding(const MultiGraph& h, const Graph& g, const TopologicalEmbedding& emb,
                              std::span<const int> parities);

}  // namespace minorforge
