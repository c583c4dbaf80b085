#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "minorforge/graph.hpp"

namespace minorforge {

struct InducedSubgraph {
  Graph graph;
  /// Local id -> vertex of the parent graph (ascending).
  std::vector<int> to_parent;
  /// Parent vertex -> local id, or -1.
  std::vector<int> to_local;
};

/// G[U] with dense relabeling in ascending order of U.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// BFS distances from a set of sources, restricted to vertices where
/// `allowed` is nonzero (all vertices when empty). kInf when unreachable.
std::vector<int> bfs_distances(const Graph& g, std::span<const int> sources, std::span<const char> allowed = {});

/// Vertices within distance r of U in G minus `forbidden`.
VertexSet ball(const Graph& g, std::span<const int> sources, int radius, std::span<const int> forbidden = {});

/// Exact diameter by all-sources BFS; kInf when disconnected.
int diameter(const Graph& g);

/// Connected components of G[mask] (all of G when mask is empty), each
/// sorted, ordered by smallest vertex.
std::vector<VertexSet> components(const Graph& g, std::span<const char> mask = {});

/// Shortest even- and odd-length walk distances from `source`. Walks never
/// pass through a forbidden vertex, though a forbidden vertex may end one.
struct ParityDistances {
  std::vector<int> even;
  std::vector<int> odd;

  int at(int v, int parity) const { return parity == 0 ? even[v] : odd[v]; }
};

ParityDistances parity_bfs(const Graph& g, int source, std::span<const int> forbidden = {});

/// One shortest walk of the requested parity from `source` to `target`,
/// or nullopt. The walk may repeat vertices.
std::optional<Path> parity_walk(const Graph& g, int source, int target, int parity,
                                std::span<const int> forbidden = {});

struct ParityPathQuery {
  std::span<const int> sources;
  std::span<const int> targets;
  int parity = 1;
  int min_length = 0;
  int max_length = kInf;
  /// Vertices a path may use (sources and targets included); empty = all.
  std::span<const char> allowed;
  /// DFS expansions allowed after the shortest walk turns out non-simple.
  std::int64_t node_budget = 2'000'000;
};

struct ParityPathResult {
  std::optional<Path> path;
  /// Set when the search stopped on the node budget rather than proving
  /// that no qualifying path exists.
  bool budget_exhausted = false;
  std::int64_t nodes = 0;
};

/// Shortest simple path of the requested parity from any source to any
/// target. The shortest parity walk (layered BFS on G x Z2) is tried first;
/// when it repeats a vertex, an iterative-deepening search over simple
/// paths, pruned by the parity walk distances, takes over.
ParityPathResult find_parity_path(const Graph& g, const ParityPathQuery& query);

/// Convenience wrapper: simple path u -> v of the given parity whose
/// internal vertices avoid `forbidden`.
ParityPathResult shortest_parity_path(const Graph& g, int u, int v, int parity,
                                      std::span<const int> forbidden = {}, int max_length = kInf);

}  // namespace minorforge
