#include "minorforge/graph.hpp"

#include <algorithm>
#include <string>

namespace minorforge {

namespace {

std::string edge_text(const Edge& e) {
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

}  // namespace

Graph::Graph(int n) : n_(n), offsets_(static_cast<std::size_t>(n) + 1, 0) {
  if (n < 0) throw Error(ErrorCode::kRange, "negative vertex count");
}

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  Graph g(n);
  for (Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw Error(ErrorCode::kRange, "edge " + edge_text(e) + " out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) throw Error(ErrorCode::kInvalidArgument, "self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end()) throw Error(ErrorCode::kInvalidArgument, "duplicate edge " + edge_text(*dup));

  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges) {
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  for (int v = 0; v < n; ++v) g.offsets_[static_cast<std::size_t>(v) + 1] = g.offsets_[static_cast<std::size_t>(v)] + deg[static_cast<std::size_t>(v)];
  g.nbrs_.resize(2 * edges.size());
  g.nbr_edges_.resize(2 * edges.size());
  std::vector<int> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are lexicographic, so appending in edge order keeps each row
  // ascending: pairs (u, w) with u < w all precede pairs (w, v).
  for (std::size_t id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    auto& fu = fill[static_cast<std::size_t>(e.u)];
    g.nbrs_[static_cast<std::size_t>(fu)] = e.v;
    g.nbr_edges_[static_cast<std::size_t>(fu)] = static_cast<int>(id);
    ++fu;
    auto& fv = fill[static_cast<std::size_t>(e.v)];
    g.nbrs_[static_cast<std::size_t>(fv)] = e.u;
    g.nbr_edges_[static_cast<std::size_t>(fv)] = static_cast<int>(id);
    ++fv;
  }
  g.edges_ = std::move(edges);
  return g;
}

std::optional<int> Graph::edge_id(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return std::nullopt;
  auto row = neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), v);
  if (it == row.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - row.begin())];
}

int Graph::max_degree() const noexcept {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

int Graph::min_degree() const noexcept {
  if (n_ == 0) return 0;
  int best = degree(0);
  for (int v = 1; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

std::optional<int> Graph::regular_degree() const noexcept {
  if (n_ == 0) return 0;
  const int d = degree(0);
  for (int v = 1; v < n_; ++v) {
    if (degree(v) != d) return std::nullopt;
  }
  return d;
}

MultiGraph::MultiGraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), incident_(static_cast<std::size_t>(n)) {
  if (n < 0) throw Error(ErrorCode::kRange, "negative vertex count");
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    Edge& e = edges_[id];
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw Error(ErrorCode::kRange, "edge " + edge_text(e) + " out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) throw Error(ErrorCode::kInvalidArgument, "self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    incident_[static_cast<std::size_t>(e.u)].push_back(static_cast<int>(id));
    incident_[static_cast<std::size_t>(e.v)].push_back(static_cast<int>(id));
  }
}

MultiGraph MultiGraph::from_graph(const Graph& g) {
  return MultiGraph(g.num_vertices(), std::vector<Edge>(g.edges().begin(), g.edges().end()));
}

int MultiGraph::max_degree() const noexcept {
  int best = 0;
  for (const auto& inc : incident_) best = std::max(best, static_cast<int>(inc.size()));
  return best;
}

bool is_simple_path(const Graph& g, const Path& p) {
  if (p.vertices.empty()) return false;
  std::vector<int> seen(p.vertices);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    if (!g.has_edge(p.vertices[i], p.vertices[i + 1])) return false;
  }
  return true;
}

std::vector<int> induced_degrees(const Graph& g, std::span<const char> mask) {
  std::vector<int> deg(static_cast<std::size_t>(g.num_vertices()), 0);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!mask[static_cast<std::size_t>(v)]) continue;
    for (int w : g.neighbors(v)) deg[static_cast<std::size_t>(v)] += mask[static_cast<std::size_t>(w)] ? 1 : 0;
  }
  return deg;
}

}  // namespace minorforge
