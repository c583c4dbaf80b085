#include "minorforge/traversal.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace minorforge {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

bool in_mask(std::span<const char> mask, int v) { return mask.empty() || mask[idx(v)]; }

struct ParityTree {
  std::array<std::vector<int>, 2> dist;
  std::array<std::vector<int>, 2> parent;
};

// BFS on G x Z2 from (source, even). Forbidden vertices are reached but not
// expanded.
ParityTree parity_tree(const Graph& g, int source, std::span<const int> forbidden) {
  const int n = g.num_vertices();
  if (source < 0 || source >= n) throw Error(ErrorCode::kRange, "source vertex out of range");
  const std::vector<char> blocked = make_mask(n, forbidden);
  ParityTree t;
  for (int p = 0; p < 2; ++p) {
    t.dist[p].assign(idx(n), kInf);
    t.parent[p].assign(idx(n), -1);
  }
  std::deque<std::pair<int, int>> queue;
  t.dist[0][idx(source)] = 0;
  queue.emplace_back(source, 0);
  while (!queue.empty()) {
    const auto [v, p] = queue.front();
    queue.pop_front();
    if (v != source && blocked[idx(v)]) continue;
    const int q = p ^ 1;
    for (int w : g.neighbors(v)) {
      if (t.dist[q][idx(w)] != kInf) continue;
      t.dist[q][idx(w)] = t.dist[p][idx(v)] + 1;
      t.parent[q][idx(w)] = v;
      queue.emplace_back(w, q);
    }
  }
  return t;
}

// Shortest walk lengths of each parity from every allowed vertex to the
// target set, inside the allowed vertices.
std::array<std::vector<int>, 2> distances_to_targets(const Graph& g, std::span<const int> targets,
                                                     std::span<const char> allowed) {
  const int n = g.num_vertices();
  std::array<std::vector<int>, 2> dist{std::vector<int>(idx(n), kInf), std::vector<int>(idx(n), kInf)};
  std::deque<std::pair<int, int>> queue;
  for (int t : targets) {
    if (!in_mask(allowed, t) || dist[0][idx(t)] == 0) continue;
    dist[0][idx(t)] = 0;
    queue.emplace_back(t, 0);
  }
  while (!queue.empty()) {
    const auto [v, p] = queue.front();
    queue.pop_front();
    const int q = p ^ 1;
    for (int w : g.neighbors(v)) {
      if (!in_mask(allowed, w) || dist[q][idx(w)] != kInf) continue;
      dist[q][idx(w)] = dist[p][idx(v)] + 1;
      queue.emplace_back(w, q);
    }
  }
  return dist;
}

class SimplePathSearch {
 public:
  SimplePathSearch(const Graph& g, const ParityPathQuery& q, const std::array<std::vector<int>, 2>& dist)
      : g_(g), q_(q), dist_(dist), target_(make_mask(g.num_vertices(), q.targets)),
        on_path_(idx(g.num_vertices()), 0) {}

  // Simple path of exactly `length` edges from `source`, or false.
  bool run(int source, int length) {
    path_.clear();
    return extend(source, length);
  }

  const std::vector<int>& path() const { return path_; }
  std::int64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }

 private:
  bool extend(int v, int remaining) {
    if (exhausted_) return false;
    if (++nodes_ > q_.node_budget) {
      exhausted_ = true;
      return false;
    }
    path_.push_back(v);
    on_path_[idx(v)] = 1;
    if (remaining == 0) {
      if (target_[idx(v)]) return true;
    } else {
      const int p = (remaining - 1) & 1;
      std::vector<int> next;
      for (int w : g_.neighbors(v)) {
        if (on_path_[idx(w)] || !in_mask(q_.allowed, w)) continue;
        if (dist_[p][idx(w)] > remaining - 1) continue;
        next.push_back(w);
      }
      std::stable_sort(next.begin(), next.end(),
                       [&](int a, int b) { return dist_[p][idx(a)] < dist_[p][idx(b)]; });
      for (int w : next) {
        if (extend(w, remaining - 1)) return true;
      }
    }
    on_path_[idx(v)] = 0;
    path_.pop_back();
    return false;
  }

  const Graph& g_;
  const ParityPathQuery& q_;
  const std::array<std::vector<int>, 2>& dist_;
  std::vector<char> target_;
  std::vector<char> on_path_;
  std::vector<int> path_;
  std::int64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  InducedSubgraph out;
  out.to_parent = normalized(VertexSet(vertices.begin(), vertices.end()));
  out.to_local.assign(idx(g.num_vertices()), -1);
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) {
    const int v = out.to_parent[i];
    if (v < 0 || v >= g.num_vertices()) throw Error(ErrorCode::kRange, "vertex " + std::to_string(v) + " out of range");
    out.to_local[idx(v)] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (int v : out.to_parent) {
    for (int w : g.neighbors(v)) {
      if (v < w && out.to_local[idx(w)] >= 0) edges.push_back({out.to_local[idx(v)], out.to_local[idx(w)]});
    }
  }
  out.graph = Graph::from_edges(static_cast<int>(out.to_parent.size()), std::move(edges));
  return out;
}

std::vector<int> bfs_distances(const Graph& g, std::span<const int> sources, std::span<const char> allowed) {
  std::vector<int> dist(idx(g.num_vertices()), kInf);
  std::deque<int> queue;
  for (int s : sources) {
    if (s < 0 || s >= g.num_vertices()) throw Error(ErrorCode::kRange, "source vertex out of range");
    if (!in_mask(allowed, s) || dist[idx(s)] == 0) continue;
    dist[idx(s)] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(v)) {
      if (!in_mask(allowed, w) || dist[idx(w)] != kInf) continue;
      dist[idx(w)] = dist[idx(v)] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

VertexSet ball(const Graph& g, std::span<const int> sources, int radius, std::span<const int> forbidden) {
  std::vector<char> allowed(idx(g.num_vertices()), 1);
  for (int v : forbidden) {
    if (v >= 0 && v < g.num_vertices()) allowed[idx(v)] = 0;
  }
  const std::vector<int> dist = bfs_distances(g, sources, allowed);
  VertexSet out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (dist[idx(v)] <= radius) out.push_back(v);
  }
  return out;
}

int diameter(const Graph& g) {
  int best = 0;
  for (int s = 0; s < g.num_vertices(); ++s) {
    const int src[] = {s};
    for (int d : bfs_distances(g, src)) {
      if (d == kInf) return kInf;
      best = std::max(best, d);
    }
  }
  return best;
}

std::vector<VertexSet> components(const Graph& g, std::span<const char> mask) {
  std::vector<VertexSet> out;
  std::vector<char> seen(idx(g.num_vertices()), 0);
  for (int s = 0; s < g.num_vertices(); ++s) {
    if (seen[idx(s)] || !in_mask(mask, s)) continue;
    VertexSet comp{s};
    seen[idx(s)] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (int w : g.neighbors(comp[i])) {
        if (seen[idx(w)] || !in_mask(mask, w)) continue;
        seen[idx(w)] = 1;
        comp.push_back(w);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

ParityDistances parity_bfs(const Graph& g, int source, std::span<const int> forbidden) {
  ParityTree t = parity_tree(g, source, forbidden);
  return {std::move(t.dist[0]), std::move(t.dist[1])};
}

std::optional<Path> parity_walk(const Graph& g, int source, int target, int parity, std::span<const int> forbidden) {
  if (target < 0 || target >= g.num_vertices()) throw Error(ErrorCode::kRange, "target vertex out of range");
  const ParityTree t = parity_tree(g, source, forbidden);
  int p = parity & 1;
  if (t.dist[p][idx(target)] == kInf) return std::nullopt;
  Path walk;
  int v = target;
  while (true) {
    walk.vertices.push_back(v);
    if (v == source && p == 0 && t.dist[0][idx(v)] == 0) break;
    v = t.parent[p][idx(v)];
    p ^= 1;
  }
  std::reverse(walk.vertices.begin(), walk.vertices.end());
  return walk;
}

ParityPathResult find_parity_path(const Graph& g, const ParityPathQuery& q) {
  const int n = g.num_vertices();
  for (int v : q.sources) {
    if (v < 0 || v >= n) throw Error(ErrorCode::kRange, "source vertex out of range");
  }
  for (int v : q.targets) {
    if (v < 0 || v >= n) throw Error(ErrorCode::kRange, "target vertex out of range");
  }
  ParityPathResult result;
  const int parity = q.parity & 1;
  const auto dist = distances_to_targets(g, q.targets, q.allowed);

  VertexSet sources;
  for (int s : q.sources) {
    if (in_mask(q.allowed, s)) sources.push_back(s);
  }
  normalize(sources);
  int shortest_walk = kInf;
  int best_source = -1;
  for (int s : sources) {
    if (dist[parity][idx(s)] < shortest_walk) {
      shortest_walk = dist[parity][idx(s)];
      best_source = s;
    }
  }
  if (shortest_walk == kInf || shortest_walk > q.max_length) return result;
  int first_length = shortest_walk;
  if (first_length < q.min_length) first_length = q.min_length + ((q.min_length - parity) & 1);

  // Descend the distance labels; the first such walk is often already simple.
  if (first_length == shortest_walk) {
    const std::vector<char> target = make_mask(n, q.targets);
    Path walk{{best_source}};
    int v = best_source;
    for (int remaining = shortest_walk; remaining > 0; --remaining) {
      const int p = (remaining - 1) & 1;
      for (int w : g.neighbors(v)) {
        if (in_mask(q.allowed, w) && dist[p][idx(w)] == remaining - 1) {
          v = w;
          break;
        }
      }
      walk.vertices.push_back(v);
    }
    if (target[idx(v)] && is_simple_path(g, walk)) {
      result.path = std::move(walk);
      return result;
    }
  }

  int allowed_count = 0;
  for (int v = 0; v < n; ++v) allowed_count += in_mask(q.allowed, v) ? 1 : 0;
  const int longest = std::min(q.max_length, allowed_count - 1);
  SimplePathSearch search(g, q, dist);
  for (int length = first_length; length <= longest; length += 2) {
    for (int s : sources) {
      if (dist[parity][idx(s)] > length) continue;
      if (search.run(s, length)) {
        result.path = Path{search.path()};
        result.nodes = search.nodes();
        return result;
      }
      if (search.exhausted()) {
        result.budget_exhausted = true;
        result.nodes = search.nodes();
        return result;
      }
    }
  }
  result.nodes = search.nodes();
  return result;
}

ParityPathResult shortest_parity_path(const Graph& g, int u, int v, int parity, std::span<const int> forbidden,
                                      int max_length) {
  const int n = g.num_vertices();
  if (u < 0 || u >= n || v < 0 || v >= n) throw Error(ErrorCode::kRange, "endpoint out of range");
  std::vector<char> allowed(idx(n), 1);
  for (int x : forbidden) {
    if (x >= 0 && x < n) allowed[idx(x)] = 0;
  }
  allowed[idx(u)] = 1;
  allowed[idx(v)] = 1;
  const int src[] = {u};
  const int dst[] = {v};
  ParityPathQuery q;
  q.sources = src;
  q.targets = dst;
  q.parity = parity;
  q.max_length = max_length;
  q.allowed = allowed;
  return find_parity_path(g, q);
}

}  // namespace minorforge
