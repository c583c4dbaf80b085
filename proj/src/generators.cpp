#include "minorforge/generators.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace minorforge {

namespace {

std::uint64_t pair_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
}

// One pass of whole-pairing rejection: a uniform perfect matching of the
// n*d points, accepted only if it yields a simple graph.
std::optional<std::vector<Edge>> try_full_pairing(int n, int d, Rng& rng) {
  std::vector<int> points(static_cast<std::size_t>(n) * d);
  for (int v = 0; v < n; ++v) {
    for (int j = 0; j < d; ++j) points[static_cast<std::size_t>(v) * d + j] = v;
  }
  rng.shuffle(std::span<int>(points));
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> edges;
  edges.reserve(points.size() / 2);
  for (std::size_t i = 0; i < points.size(); i += 2) {
    const int u = points[i];
    const int v = points[i + 1];
    if (u == v) return std::nullopt;
    if (!seen.insert(pair_key(u, v)).second) return std::nullopt;
    edges.push_back({std::min(u, v), std::max(u, v)});
  }
  return edges;
}

// Steger-Wormald: draw two random unpaired points; keep the pair only if
// it creates neither a loop nor a parallel edge. Returns nullopt when the
// remaining points admit no valid pair.
std::optional<std::vector<Edge>> try_incremental_pairing(int n, int d, Rng& rng) {
  std::vector<int> points(static_cast<std::size_t>(n) * d);
  for (int v = 0; v < n; ++v) {
    for (int j = 0; j < d; ++j) points[static_cast<std::size_t>(v) * d + j] = v;
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(points.size());
  std::vector<Edge> edges;
  edges.reserve(points.size() / 2);

  auto valid = [&](int u, int v) { return u != v && !seen.contains(pair_key(u, v)); };

  while (!points.empty()) {
    const std::size_t m = points.size();
    bool paired = false;
    // A random draw succeeds with high probability until the very end;
    // fall back to an exhaustive scan after repeated failures.
    for (std::size_t tries = 0; tries < 8 * m + 64; ++tries) {
      const auto i = static_cast<std::size_t>(rng.below(m));
      const auto j = static_cast<std::size_t>(rng.below(m));
      if (i == j || !valid(points[i], points[j])) continue;
      const int u = points[i];
      const int v = points[j];
      seen.insert(pair_key(u, v));
      edges.push_back({std::min(u, v), std::max(u, v)});
      const std::size_t hi = std::max(i, j);
      const std::size_t lo = std::min(i, j);
      points[hi] = points.back();
      points.pop_back();
      points[lo] = points.back();
      points.pop_back();
      paired = true;
      break;
    }
    if (paired) continue;
    std::vector<std::pair<std::size_t, std::size_t>> candidates;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (valid(points[i], points[j])) candidates.emplace_back(i, j);
      }
    }
    if (candidates.empty()) return std::nullopt;
    const auto [lo, hi] = candidates[static_cast<std::size_t>(rng.below(candidates.size()))];
    const int u = points[lo];
    const int v = points[hi];
    seen.insert(pair_key(u, v));
    edges.push_back({std::min(u, v), std::max(u, v)});
    points[hi] = points.back();
    points.pop_back();
    points[lo] = points.back();
    points.pop_back();
  }
  return edges;
}

void check_regular_args(int n, int d) {
  if (n < 0 || d < 0) throw Error(ErrorCode::kInvalidArgument, "n and d must be non-negative");
  if ((static_cast<long long>(n) * d) % 2 != 0) {
    throw Error(ErrorCode::kParity, "n*d must be even (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
  if (d > 0 && d >= n) {
    throw Error(ErrorCode::kInvalidArgument, "degree d=" + std::to_string(d) + " requires more than d vertices");
  }
}

}  // namespace

Graph generate_random_regular(int n, int d, Rng& rng, const RegularOptions& options) {
  check_regular_args(n, d);
  if (d == 0) return Graph(n);
  const bool exact = d <= kExactPairingMaxDegree;
  for (std::int64_t attempt = 0; attempt < options.max_attempts; ++attempt) {
    auto edges = exact ? try_full_pairing(n, d, rng) : try_incremental_pairing(n, d, rng);
    if (edges) return Graph::from_edges(n, std::move(*edges));
  }
  throw Error(ErrorCode::kTimeout, "no simple " + std::to_string(d) + "-regular graph on " + std::to_string(n) +
                                       " vertices after " + std::to_string(options.max_attempts) + " attempts");
}

OplusSample oplus_sample(int n, const std::vector<int>& degrees, Rng& rng, std::int64_t max_attempts) {
  if (degrees.empty()) throw Error(ErrorCode::kInvalidArgument, "oplus_sample needs at least one layer");
  // A degree sum >= n can never give a simple union; that case surfaces as
  // a timeout rather than an argument error.
  for (int d : degrees) check_regular_args(n, d);
  RegularOptions layer_options;
  layer_options.max_attempts = max_attempts;
  for (std::int64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<Graph> layers;
    layers.reserve(degrees.size());
    for (int d : degrees) layers.push_back(generate_random_regular(n, d, rng, layer_options));

    std::vector<Edge> all;
    for (const Graph& layer : layers) all.insert(all.end(), layer.edges().begin(), layer.edges().end());
    std::vector<Edge> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;

    OplusSample out;
    out.graph = Graph::from_edges(n, std::move(sorted));
    out.layer_degrees = degrees;
    out.attempts = attempt;
    for (const Graph& layer : layers) {
      std::vector<int> ids;
      ids.reserve(layer.edges().size());
      for (const Edge& e : layer.edges()) ids.push_back(*out.graph.edge_id(e.u, e.v));
      std::sort(ids.begin(), ids.end());
      out.layers.push_back(std::move(ids));
    }
    return out;
  }
  throw Error(ErrorCode::kTimeout, "union of layers never simple after " + std::to_string(max_attempts) + " joint resamples");
}

namespace families {

Graph complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph cycle(int n) {
  if (n < 3) throw Error(ErrorCode::kInvalidArgument, "cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return Graph::from_edges(n, std::move(edges));
}

Graph path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph::from_edges(n, std::move(edges));
}

Graph star(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Graph::from_edges(leaves + 1, std::move(edges));
}

Graph petersen() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});
    edges.push_back({i, i + 5});
    edges.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return Graph::from_edges(10, std::move(edges));
}

Graph hypercube(int dim) {
  const int n = 1 << dim;
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) {
    for (int b = 0; b < dim; ++b) {
      const int w = v ^ (1 << b);
      if (v < w) edges.push_back({v, w});
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph circulant(int n, const std::vector<int>& jumps) {
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) {
    for (int j : jumps) {
      const int w = ((v + j) % n + n) % n;
      if (w == v) continue;
      edges.push_back({std::min(v, w), std::max(v, w)});
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges(n, std::move(edges));
}

Graph complete_bipartite(int a, int b) {
  std::vector<Edge> edges;
  for (int u = 0; u < a; ++u) {
    for (int v = 0; v < b; ++v) edges.push_back({u, a + v});
  }
  return Graph::from_edges(a + b, std::move(edges));
}

Graph two_triangles_bridge() {
  return Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
}

MultiGraph by_name(const std::string& name) {
  std::vector<std::string> parts;
  {
    std::stringstream ss(name);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
  }
  if (parts.empty()) throw Error(ErrorCode::kInvalidArgument, "empty family name");
  auto arg = [&](std::size_t i) {
    if (parts.size() <= i) throw Error(ErrorCode::kInvalidArgument, "family '" + name + "' needs a size argument");
    try {
      return std::stoi(parts[i]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad size in family '" + name + "'");
    }
  };
  const std::string& kind = parts[0];
  if (kind == "edge") return MultiGraph(2, {{0, 1}});
  if (kind == "triangle") return MultiGraph::from_graph(complete(3));
  if (kind == "k4") return MultiGraph::from_graph(complete(4));
  if (kind == "petersen") return MultiGraph::from_graph(petersen());
  if (kind == "cube") return MultiGraph::from_graph(hypercube(3));
  if (kind == "cycle") return MultiGraph::from_graph(cycle(arg(1)));
  if (kind == "complete") return MultiGraph::from_graph(complete(arg(1)));
  if (kind == "path") return MultiGraph::from_graph(path(arg(1)));
  if (kind == "star") return MultiGraph::from_graph(star(arg(1)));
  if (kind == "circulant") {
    const int n = arg(1);
    if (parts.size() < 3) throw Error(ErrorCode::kInvalidArgument, "circulant needs jumps, e.g. circulant:7:1,2");
    std::vector<int> jumps;
    std::stringstream ss(parts[2]);
    std::string j;
    while (std::getline(ss, j, ',')) jumps.push_back(std::stoi(j));
    return MultiGraph::from_graph(circulant(n, jumps));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown graph family '" + name + "'");
}

}  // namespace families

}  // namespace minorforge
