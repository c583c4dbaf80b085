#pragma once

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "minorforge/common.hpp"

namespace minorforge {

/// Unordered vertex pair, stored with u < v for simple graphs.
struct Edge {
  int u = 0;
  int v = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Simple undirected graph in CSR form. Edge ids are dense 0..m-1 and
/// follow the lexicographic order of the (u < v) pairs; every iteration
/// order in the library derives from it.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  /// Validates (range, no loops, no duplicates) and canonicalizes.
  static Graph from_edges(int n, std::vector<Edge> edges);

  int num_vertices() const noexcept { return n_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }

  std::span<const int> neighbors(int v) const {
    return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
  }
  /// Edge ids aligned with `neighbors(v)`.
  std::span<const int> incident_edges(int v) const {
    return {nbr_edges_.data() + offsets_[v], nbr_edges_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return offsets_[v + 1] - offsets_[v]; }

  const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::optional<int> edge_id(int u, int v) const;
  bool has_edge(int u, int v) const { return edge_id(u, v).has_value(); }

  int max_degree() const noexcept;
  int min_degree() const noexcept;
  /// The common degree if every vertex has the same degree.
  std::optional<int> regular_degree() const noexcept;

  bool operator==(const Graph& other) const noexcept {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  int n_ = 0;
  std::vector<int> offsets_{0};
  std::vector<int> nbrs_;
  std::vector<int> nbr_edges_;
  std::vector<Edge> edges_;
};

/// Loop-free multigraph used only as an embedding pattern. Edge ids are
/// positions in the input list; endpoints are stored with u < v.
class MultiGraph {
 public:
  MultiGraph() = default;
  MultiGraph(int n, std::vector<Edge> edges);
  static MultiGraph from_graph(const Graph& g);

  int num_vertices() const noexcept { return n_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const int> incident_edges(int v) const { return incident_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(incident_[static_cast<std::size_t>(v)].size()); }
  int max_degree() const noexcept;
  int other_end(int edge_id, int v) const {
    const Edge& e = edge(edge_id);
    return e.u == v ? e.v : e.u;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

/// Vertex sequence; length counts edges.
struct Path {
  std::vector<int> vertices;

  int length() const noexcept {
    return vertices.empty() ? 0 : static_cast<int>(vertices.size()) - 1;
  }
  int front() const { return vertices.front(); }
  int back() const { return vertices.back(); }
};

/// True iff consecutive vertices are adjacent in `g` and no vertex repeats.
bool is_simple_path(const Graph& g, const Path& p);

/// Degree of each vertex inside G[set] (indexed by vertex id; zero outside).
std::vector<int> induced_degrees(const Graph& g, std::span<const char> mask);

}  // namespace minorforge
