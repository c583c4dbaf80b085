#include "minorforge/expansion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>

#include "minorforge/spectral.hpp"
#include "minorforge/traversal.hpp"

namespace minorforge {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

using Mask = std::uint64_t;

std::vector<Mask> neighbor_masks(const Graph& g) {
  std::vector<Mask> nb(idx(g.num_vertices()), 0);
  for (const Edge& e : g.edges()) {
    nb[idx(e.u)] |= Mask{1} << e.v;
    nb[idx(e.v)] |= Mask{1} << e.u;
  }
  return nb;
}

VertexSet mask_to_set(Mask m) {
  VertexSet out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

// Lexicographic preorder over subsets of size <= max_size.
struct MinRatioSearch {
  const std::vector<Mask>& nb;
  int n;
  int max_size;
  Mask best = 0;
  int best_boundary = 0;
  int best_size = 0;

  void run(int next, Mask u, Mask reach, int size) {
    for (int v = next; v < n; ++v) {
      const Mask u2 = u | (Mask{1} << v);
      const Mask reach2 = reach | nb[idx(v)];
      const int boundary = std::popcount(reach2 & ~u2);
      const int s = size + 1;
      // boundary/s < best_boundary/best_size, or equal ratio with fewer vertices.
      const long long lhs = static_cast<long long>(boundary) * best_size;
      const long long rhs = static_cast<long long>(best_boundary) * s;
      if (best_size == 0 || lhs < rhs || (lhs == rhs && s < best_size)) {
        best = u2;
        best_boundary = boundary;
        best_size = s;
      }
      if (s < max_size) run(v + 1, u2, reach2, s);
    }
  }
};

// First violating set of exactly `size` vertices in lexicographic order.
struct ViolatorSearch {
  const std::vector<Mask>& nb;
  int n;
  double beta;
  Mask found = 0;

  bool run(int next, Mask u, Mask reach, int remaining, int size) {
    for (int v = next; v <= n - remaining; ++v) {
      const Mask u2 = u | (Mask{1} << v);
      const Mask reach2 = reach | nb[idx(v)];
      if (remaining == 1) {
        if (std::popcount(reach2 & ~u2) < beta * size - 1e-12) {
          found = u2;
          return true;
        }
      } else if (run(v + 1, u2, reach2, remaining - 1, size)) {
        return true;
      }
    }
    return false;
  }
};

std::optional<VertexSet> sweep_cut(const InducedSubgraph& h, double beta) {
  const Graph& lg = h.graph;
  const int m = lg.num_vertices();
  const FiedlerResult f = fiedler_vector(lg);
  std::vector<int> order(idx(m));
  for (int i = 0; i < m; ++i) order[idx(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return f.vector[idx(a)] < f.vector[idx(b)]; });

  int best_len = 0;
  int best_boundary = 0;
  bool best_reversed = false;
  for (bool reversed : {false, true}) {
    std::vector<int> touch(idx(m), 0);
    std::vector<char> in_u(idx(m), 0);
    int boundary = 0;
    for (int len = 1; len <= m / 2; ++len) {
      const int x = order[idx(reversed ? m - len : len - 1)];
      if (touch[idx(x)] > 0) --boundary;
      in_u[idx(x)] = 1;
      for (int w : lg.neighbors(x)) {
        if (!in_u[idx(w)] && touch[idx(w)] == 0) ++boundary;
        ++touch[idx(w)];
      }
      if (best_len == 0 || static_cast<long long>(boundary) * best_len < static_cast<long long>(best_boundary) * len) {
        best_len = len;
        best_boundary = boundary;
        best_reversed = reversed;
      }
    }
  }
  if (best_len == 0 || !(best_boundary < beta * best_len - 1e-12)) return std::nullopt;
  VertexSet cut;
  for (int i = 0; i < best_len; ++i) cut.push_back(h.to_parent[idx(order[idx(best_reversed ? m - 1 - i : i)])]);
  return normalized(std::move(cut));
}

}  // namespace

int exact_limit() {
  constexpr int kDefault = 24;
  const char* env = std::getenv("MINORFORGE_EXACT_LIMIT");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0) return kDefault;
  return static_cast<int>(std::min<long>(v, 62));
}

ExpansionReport vertex_expansion_exact(const Graph& g) {
  const int n = g.num_vertices();
  if (n > exact_limit()) {
    throw Error(ErrorCode::kSize, "exact expansion limited to " + std::to_string(exact_limit()) + " vertices (n=" +
                                      std::to_string(n) + ")");
  }
  ExpansionReport r;
  r.alpha_spectral_lower = n >= 2 ? spectral_expansion_lower(g) : 0.0;
  if (n / 2 == 0) {
    r.alpha_exact = std::numeric_limits<double>::infinity();
    return r;
  }
  const std::vector<Mask> nb = neighbor_masks(g);
  MinRatioSearch search{nb, n, n / 2};
  search.run(0, 0, 0, 0);
  r.alpha_exact = static_cast<double>(search.best_boundary) / search.best_size;
  r.witness_cut = mask_to_set(search.best);
  r.witness_boundary = search.best_boundary;
  return r;
}

ExpansionReport expansion_report(const Graph& g) {
  if (g.num_vertices() <= exact_limit()) return vertex_expansion_exact(g);
  ExpansionReport r;
  r.alpha_spectral_lower = spectral_expansion_lower(g);
  return r;
}

double spectral_expansion_lower(const Graph& g) {
  if (g.num_vertices() < 2) throw Error(ErrorCode::kSize, "spectral expansion needs at least 2 vertices");
  const int max_deg = g.max_degree();
  if (max_deg == 0) return 0.0;
  const double l2 = spectrum(g, MatrixKind::kLaplacian).lambda(2);
  return std::max(0.0, l2) / (2.0 * max_deg);
}

int boundary_size(const Graph& g, std::span<const int> u, std::span<const int> within) {
  const int n = g.num_vertices();
  const std::vector<char> in_u = make_mask(n, u);
  std::vector<char> in_w = within.empty() ? std::vector<char>(idx(n), 1) : make_mask(n, within);
  int count = 0;
  std::vector<char> seen(idx(n), 0);
  for (int v : u) {
    for (int w : g.neighbors(v)) {
      if (in_u[idx(w)] || !in_w[idx(w)] || seen[idx(w)]) continue;
      seen[idx(w)] = 1;
      ++count;
    }
  }
  return count;
}

SparseCutResult find_sparse_cut(const Graph& g, std::span<const int> c, double beta) {
  const VertexSet cset = normalized(VertexSet(c.begin(), c.end()));
  const InducedSubgraph h = induced_subgraph(g, cset);
  const int m = h.graph.num_vertices();
  SparseCutResult r;
  if (m <= exact_limit()) {
    r.exact = true;
    const std::vector<Mask> nb = neighbor_masks(h.graph);
    for (int size = 1; size <= m / 2; ++size) {
      ViolatorSearch search{nb, m, beta};
      if (search.run(0, 0, 0, size, size)) {
        VertexSet cut;
        for (int v : mask_to_set(search.found)) cut.push_back(h.to_parent[idx(v)]);
        r.cut = std::move(cut);
        return r;
      }
    }
    return r;
  }
  if (beta <= 0) return r;
  const auto comps = components(h.graph);
  if (comps.size() > 1) {
    const auto smallest = std::min_element(comps.begin(), comps.end(),
                                           [](const VertexSet& a, const VertexSet& b) { return a.size() < b.size(); });
    VertexSet cut;
    for (int v : *smallest) cut.push_back(h.to_parent[idx(v)]);
    r.cut = std::move(cut);
    return r;
  }
  r.cut = sweep_cut(h, beta);
  return r;
}

FixExpansionResult fix_expansion(const Graph& g, std::span<const int> c, std::span<const int> a, double beta) {
  FixExpansionResult r;
  r.c = normalized(VertexSet(c.begin(), c.end()));
  r.a = normalized(VertexSet(a.begin(), a.end()));
  if (!disjoint(r.c, r.a)) throw Error(ErrorCode::kInvalidArgument, "C and A must be disjoint");
  const std::size_t cap = r.c.size();
  while (!r.c.empty()) {
    const SparseCutResult cut = find_sparse_cut(g, r.c, beta);
    r.certified = r.certified && cut.exact;
    if (!cut.cut) break;
    if (r.moved.size() >= cap) throw Error(ErrorCode::kBudget, "expansion repair exceeded its move cap");
    r.c = set_difference(r.c, *cut.cut);
    r.a = set_union(r.a, *cut.cut);
    r.moved.push_back(*cut.cut);
  }
  return r;
}

double separator_lower_bound(double alpha, int n) { return alpha * n / (3.0 * (1.0 + alpha)); }

int diameter_upper_bound(double alpha, int n) {
  if (alpha <= 0) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be at least 2");
  const double x = 2.0 * (std::log2(static_cast<double>(n)) - 1.0) / std::log2(1.0 + alpha);
  return static_cast<int>(std::ceil(x - 1e-9)) + 1;
}

double c_alpha(double alpha) { return 2.0 / std::log2(1.0 + alpha) + 3.0; }

}  // namespace minorforge
