#include "minorforge/matching.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "minorforge/traversal.hpp"

namespace minorforge {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

class Blossom {
 public:
  explicit Blossom(const Graph& g)
      : g_(g), n_(g.num_vertices()), mate_(idx(n_), -1), parent_(idx(n_)), base_(idx(n_)), used_(idx(n_)),
        in_blossom_(idx(n_)), lca_mark_(idx(n_)) {}

  std::vector<int> solve() {
    for (int v = 0; v < n_; ++v) {
      if (mate_[idx(v)] != -1) continue;
      for (int w : g_.neighbors(v)) {
        if (mate_[idx(w)] == -1) {
          mate_[idx(v)] = w;
          mate_[idx(w)] = v;
          break;
        }
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (mate_[idx(v)] != -1) continue;
      int end = find_augmenting(v);
      while (end != -1) {
        const int pv = parent_[idx(end)];
        const int next = mate_[idx(pv)];
        mate_[idx(end)] = pv;
        mate_[idx(pv)] = end;
        end = next;
      }
    }
    return mate_;
  }

 private:
  int lca(int a, int b) {
    std::fill(lca_mark_.begin(), lca_mark_.end(), 0);
    while (true) {
      a = base_[idx(a)];
      lca_mark_[idx(a)] = 1;
      if (mate_[idx(a)] == -1) break;
      a = parent_[idx(mate_[idx(a)])];
    }
    while (true) {
      b = base_[idx(b)];
      if (lca_mark_[idx(b)]) return b;
      b = parent_[idx(mate_[idx(b)])];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[idx(v)] != b) {
      in_blossom_[idx(base_[idx(v)])] = 1;
      in_blossom_[idx(base_[idx(mate_[idx(v)])])] = 1;
      parent_[idx(v)] = child;
      child = mate_[idx(v)];
      v = parent_[idx(mate_[idx(v)])];
    }
  }

  int find_augmenting(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(parent_.begin(), parent_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[idx(root)] = 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int to : g_.neighbors(v)) {
        if (base_[idx(v)] == base_[idx(to)] || mate_[idx(v)] == to) continue;
        if (to == root || (mate_[idx(to)] != -1 && parent_[idx(mate_[idx(to)])] != -1)) {
          const int b = lca(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
          mark_path(v, b, to);
          mark_path(to, b, v);
          for (int i = 0; i < n_; ++i) {
            if (!in_blossom_[idx(base_[idx(i)])]) continue;
            base_[idx(i)] = b;
            if (!used_[idx(i)]) {
              used_[idx(i)] = 1;
              queue.push_back(i);
            }
          }
        } else if (parent_[idx(to)] == -1) {
          parent_[idx(to)] = v;
          if (mate_[idx(to)] == -1) return to;
          used_[idx(mate_[idx(to)])] = 1;
          queue.push_back(mate_[idx(to)]);
        }
      }
    }
    return -1;
  }

  const Graph& g_;
  int n_;
  std::vector<int> mate_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<char> used_;
  std::vector<char> in_blossom_;
  std::vector<char> lca_mark_;
};

}  // namespace

std::vector<int> max_matching_mates(const Graph& g) { return Blossom(g).solve(); }

Matching max_matching(const Graph& g) {
  const std::vector<int> mate = max_matching_mates(g);
  Matching m;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (mate[idx(v)] > v) m.push_back(*g.edge_id(v, mate[idx(v)]));
  }
  std::sort(m.begin(), m.end());
  return m;
}

bool is_matching(const Graph& g, std::span<const int> edge_ids) {
  std::vector<char> covered(idx(g.num_vertices()), 0);
  for (int id : edge_ids) {
    if (id < 0 || id >= g.num_edges()) return false;
    const Edge& e = g.edge(id);
    if (covered[idx(e.u)] || covered[idx(e.v)]) return false;
    covered[idx(e.u)] = covered[idx(e.v)] = 1;
  }
  return true;
}

bool is_perfect_matching(const Graph& g, std::span<const int> edge_ids) {
  return is_matching(g, edge_ids) && 2 * static_cast<long long>(edge_ids.size()) == g.num_vertices();
}

std::optional<Matching> perfect_matching_of(const Graph& g, std::span<const int> vertices) {
  const InducedSubgraph h = induced_subgraph(g, vertices);
  if (h.graph.num_vertices() % 2 != 0) return std::nullopt;
  const std::vector<int> mate = max_matching_mates(h.graph);
  Matching m;
  for (int v = 0; v < h.graph.num_vertices(); ++v) {
    if (mate[idx(v)] == -1) return std::nullopt;
    if (mate[idx(v)] > v) m.push_back(*g.edge_id(h.to_parent[idx(v)], h.to_parent[idx(mate[idx(v)])]));
  }
  std::sort(m.begin(), m.end());
  return m;
}

std::optional<EdgeAssignment> solve_card(const Graph& g, std::span<const int> b) {
  const int n = g.num_vertices();
  if (static_cast<int>(b.size()) != n) throw Error(ErrorCode::kMismatch, "charge vector length differs from n");
  long long total = 0;
  for (int v = 0; v < n; ++v) {
    if (b[idx(v)] < 0 || b[idx(v)] > g.degree(v)) return std::nullopt;
    total += b[idx(v)];
  }
  if (total % 2 != 0) return std::nullopt;

  // Port of v for its i-th incident edge: port_base[v] + i; slack vertices follow.
  std::vector<int> port_base(idx(n));
  int next = 0;
  for (int v = 0; v < n; ++v) {
    port_base[idx(v)] = next;
    next += 2 * g.degree(v) - b[idx(v)];
  }
  std::vector<Edge> edges;
  std::vector<int> edge_port_pair(idx(g.num_edges()));
  for (int v = 0; v < n; ++v) {
    const int d = g.degree(v);
    for (int s = 0; s < d - b[idx(v)]; ++s) {
      for (int i = 0; i < d; ++i) edges.push_back({port_base[idx(v)] + i, port_base[idx(v)] + d + s});
    }
  }
  for (int v = 0; v < n; ++v) {
    const auto nbrs = g.neighbors(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const int w = nbrs[i];
      if (w < v) continue;
      const auto wn = g.neighbors(w);
      const auto j = static_cast<int>(std::lower_bound(wn.begin(), wn.end(), v) - wn.begin());
      edges.push_back({port_base[idx(v)] + static_cast<int>(i), port_base[idx(w)] + j});
      edge_port_pair[idx(ids[i])] = port_base[idx(v)] + static_cast<int>(i);
    }
  }
  const Graph gadget = Graph::from_edges(next, std::move(edges));
  const std::vector<int> mate = max_matching_mates(gadget);
  if (std::find(mate.begin(), mate.end(), -1) != mate.end()) return std::nullopt;

  EdgeAssignment x(idx(g.num_edges()), 0);
  for (int id = 0; id < g.num_edges(); ++id) {
    const int pu = edge_port_pair[idx(id)];
    const Edge& e = g.edge(id);
    const auto wn = g.neighbors(e.v);
    const int pv = port_base[idx(e.v)] + static_cast<int>(std::lower_bound(wn.begin(), wn.end(), e.u) - wn.begin());
    x[idx(id)] = mate[idx(pu)] == pv ? 1 : 0;
  }
  return x;
}

bool verify_assignment(const Graph& g, std::span<const int> b, std::span<const std::uint8_t> x) {
  if (static_cast<int>(b.size()) != g.num_vertices()) throw Error(ErrorCode::kMismatch, "charge vector length differs from n");
  if (static_cast<int>(x.size()) != g.num_edges()) throw Error(ErrorCode::kMismatch, "assignment length differs from m");
  std::vector<int> load(idx(g.num_vertices()), 0);
  for (int id = 0; id < g.num_edges(); ++id) {
    if (x[idx(id)] > 1) return false;
    if (x[idx(id)]) {
      ++load[idx(g.edge(id).u)];
      ++load[idx(g.edge(id).v)];
    }
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (load[idx(v)] != b[idx(v)]) return false;
  }
  return true;
}

}  // namespace minorforge
