#include "minorforge/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <sstream>

#include "minorforge/expansion.hpp"

namespace minorforge {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

// Unit-capacity residual network for vertex-disjoint paths.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : adj_(idx(nodes)) {}

  void add(int from, int to, int cap = 1) {
    adj_[idx(from)].push_back({to, cap, static_cast<int>(adj_[idx(to)].size()), cap});
    adj_[idx(to)].push_back({from, 0, static_cast<int>(adj_[idx(from)].size()) - 1, 0});
  }

  bool augment(int s, int t) {
    std::vector<std::pair<int, int>> parent(adj_.size(), {-1, -1});
    std::deque<int> queue{s};
    parent[idx(s)] = {s, -1};
    while (!queue.empty() && parent[idx(t)].first < 0) {
      const int v = queue.front();
      queue.pop_front();
      for (int i = 0; i < static_cast<int>(adj_[idx(v)].size()); ++i) {
        const Arc& a = adj_[idx(v)][idx(i)];
        if (a.cap > 0 && parent[idx(a.to)].first < 0) {
          parent[idx(a.to)] = {v, i};
          queue.push_back(a.to);
        }
      }
    }
    if (parent[idx(t)].first < 0) return false;
    for (int v = t; v != s;) {
      const auto [u, i] = parent[idx(v)];
      Arc& a = adj_[idx(u)][idx(i)];
      a.cap -= 1;
      adj_[idx(v)][idx(a.rev)].cap += 1;
      v = u;
    }
    return true;
  }

  // Next node along a forward arc carrying flow, consuming it; -1 if none.
  int follow(int v) {
    for (Arc& a : adj_[idx(v)]) {
      if (a.initial - a.cap > a.consumed) {
        ++a.consumed;
        return a.to;
      }
    }
    return -1;
  }

 private:
  struct Arc {
    int to;
    int cap;
    int rev;
    int initial;
    int consumed = 0;
  };

  std::vector<std::vector<Arc>> adj_;
};

VertexSet neighborhood_in(const Graph& g, std::span<const int> u, const std::vector<char>& within) {
  VertexSet out;
  for (int v : u) {
    for (int w : g.neighbors(v)) {
      if (within[idx(w)]) out.push_back(w);
    }
  }
  return normalized(std::move(out));
}

std::optional<VertexSet> grow_connected(const Graph& g, const VertexSet& c, int s) {
  const std::vector<char> mask = make_mask(g.num_vertices(), c);
  const std::vector<VertexSet> comps = components(g, mask);
  const VertexSet* best = nullptr;
  for (const VertexSet& comp : comps) {
    if (!best || comp.size() > best->size()) best = &comp;
  }
  if (!best || static_cast<int>(best->size()) < s) return std::nullopt;
  VertexSet out{best->front()};
  std::vector<char> seen(idx(g.num_vertices()), 0);
  seen[idx(best->front())] = 1;
  for (std::size_t i = 0; i < out.size() && static_cast<int>(out.size()) < s; ++i) {
    for (int w : g.neighbors(out[i])) {
      if (!mask[idx(w)] || seen[idx(w)]) continue;
      seen[idx(w)] = 1;
      out.push_back(w);
      if (static_cast<int>(out.size()) == s) break;
    }
  }
  return normalized(std::move(out));
}

// First s vertices of a BFS from `root` inside G[set].
VertexSet trim_connected(const Graph& g, const VertexSet& set, int root, int s) {
  const std::vector<char> mask = make_mask(g.num_vertices(), set);
  std::vector<char> seen(idx(g.num_vertices()), 0);
  VertexSet out{root};
  seen[idx(root)] = 1;
  for (std::size_t i = 0; i < out.size() && static_cast<int>(out.size()) < s; ++i) {
    for (int w : g.neighbors(out[i])) {
      if (!mask[idx(w)] || seen[idx(w)]) continue;
      seen[idx(w)] = 1;
      out.push_back(w);
      if (static_cast<int>(out.size()) == s) break;
    }
  }
  return normalized(std::move(out));
}

// Kuhn's augmenting paths: family index -> distinct representative.
std::vector<int> transversal(const std::vector<VertexSet>& options, int n) {
  std::vector<int> owner(idx(n), -1);
  std::vector<int> pick(options.size(), -1);
  std::vector<char> visited;
  std::function<bool(int)> try_assign = [&](int i) {
    for (int v : options[idx(i)]) {
      if (visited[idx(v)]) continue;
      visited[idx(v)] = 1;
      if (owner[idx(v)] < 0 || try_assign(owner[idx(v)])) {
        owner[idx(v)] = i;
        pick[idx(i)] = v;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < static_cast<int>(options.size()); ++i) {
    visited.assign(idx(n), 0);
    try_assign(i);
  }
  return pick;
}

}  // namespace

const char* to_string(EmbedMode mode) { return mode == EmbedMode::kPaper ? "paper" : "engineering"; }

int EmbedParams::r(int degree) const {
  if (degree <= 0) return 0;
  return std::max(1, static_cast<int>(std::ceil(r_mult * degree + r_add - 1e-9)));
}

EmbedParams embed_parameters(double alpha, int n, EmbedMode mode, double sigma, double rho) {
  if (!(alpha > 0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be at least 2");
  EmbedParams p;
  p.mode = mode;
  p.alpha = alpha;
  p.beta = alpha / (3.0 * (1.0 + alpha));
  p.gamma = p.beta / (3.0 * (1.0 + p.beta));
  p.n = n;
  const double logn = std::log2(static_cast<double>(n));
  if (mode == EmbedMode::kPaper) {
    p.s = static_cast<int>(std::ceil(18.0 * c_alpha(p.beta / 2) / p.beta * logn));
    p.r_mult = 1.0 + 4.0 / p.beta;
    p.r_add = -1.0;
    p.cross_spare = 1.0 + 1.0 / p.gamma;
    p.cross_s_floor = static_cast<int>(std::ceil(1.0 / p.gamma - 1e-9));
    p.cross_center_spare = true;
    p.path_max_len = p.s;
  } else {
    if (!(sigma > 0) || !(rho > 0)) throw Error(ErrorCode::kInvalidArgument, "sigma and rho must be positive");
    p.s = std::max(1, static_cast<int>(std::ceil(sigma * logn)));
    p.r_mult = rho;
    p.r_add = 0.0;
    p.cross_spare = 2.0;
    p.cross_s_floor = 1;
    p.path_max_len = kInf;
    p.non_paper = true;
  }
  return p;
}

VertexSet Cross::vertices() const {
  VertexSet out{center};
  for (const VertexSet& b : branches) out.insert(out.end(), b.begin(), b.end());
  return normalized(std::move(out));
}

std::vector<std::string> cross_violations(const Graph& g, const Cross& cross, int s) {
  std::vector<std::string> out;
  const int n = g.num_vertices();
  if (cross.center < 0 || cross.center >= n) {
    out.push_back("center out of range");
    return out;
  }
  std::vector<int> seen(idx(n), -1);
  for (std::size_t i = 0; i < cross.branches.size(); ++i) {
    const VertexSet& b = cross.branches[i];
    const std::string name = "branch " + std::to_string(i);
    if (static_cast<int>(b.size()) != s) out.push_back(name + " has size " + std::to_string(b.size()));
    bool touches = false;
    for (int v : b) {
      if (v < 0 || v >= n) {
        out.push_back(name + " has a vertex out of range");
        return out;
      }
      if (v == cross.center) out.push_back(name + " contains the center");
      if (seen[idx(v)] >= 0) {
        out.push_back(name + " meets branch " + std::to_string(seen[idx(v)]) + " at " + std::to_string(v));
      }
      seen[idx(v)] = static_cast<int>(i);
      touches = touches || g.has_edge(cross.center, v);
    }
    if (!touches) out.push_back(name + " misses the center's neighborhood");
    if (!b.empty() && components(g, make_mask(n, b)).size() != 1) out.push_back(name + " is not connected");
  }
  return out;
}

std::vector<Path> vertex_disjoint_paths(const Graph& g, std::span<const int> a, std::span<const int> b, int want,
                                        std::span<const char> allowed, Disjointness mode) {
  const int n = g.num_vertices();
  auto ok = [&](int v) { return allowed.empty() || allowed[idx(v)]; };
  const int source = 2 * n;
  const int sink = 2 * n + 1;
  const std::vector<char> in_a = make_mask(n, a);
  const std::vector<char> in_b = make_mask(n, b);
  const int shared = std::max(want, 1);
  FlowNetwork net(2 * n + 2);
  for (int v = 0; v < n; ++v) {
    if (!ok(v)) continue;
    const bool end = in_a[idx(v)] || in_b[idx(v)];
    net.add(2 * v, 2 * v + 1, mode == Disjointness::kInternal && end ? shared : 1);
    for (int w : g.neighbors(v)) {
      if (ok(w)) net.add(2 * v + 1, 2 * w);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!ok(v)) continue;
    const int cap = mode == Disjointness::kInternal ? shared : 1;
    if (in_a[idx(v)]) net.add(source, 2 * v, cap);
    if (in_b[idx(v)]) net.add(2 * v + 1, sink, cap);
  }
  int flow = 0;
  while (flow < want && net.augment(source, sink)) ++flow;

  std::vector<Path> out;
  for (int i = 0; i < flow; ++i) {
    std::vector<int> walk;
    int node = net.follow(source);
    while (node >= 0 && node != sink) {
      if (node % 2 == 0) walk.push_back(node / 2);
      node = net.follow(node);
    }
    // Keep the segment from the last A vertex to the first B vertex after it.
    std::size_t start = 0;
    for (std::size_t j = 0; j < walk.size(); ++j) {
      if (in_a[idx(walk[j])]) start = j;
    }
    std::size_t end = start;
    while (!in_b[idx(walk[end])]) ++end;
    out.push_back(Path{std::vector<int>(walk.begin() + static_cast<std::ptrdiff_t>(start),
                                        walk.begin() + static_cast<std::ptrdiff_t>(end) + 1)});
  }
  return out;
}

ParityPathResult parity_path_between_sets(const Graph& g, std::span<const int> c, std::span<const int> from,
                                          std::span<const int> to, int parity, int max_len) {
  const std::vector<char> allowed = make_mask(g.num_vertices(), c);
  ParityPathQuery q;
  q.sources = from;
  q.targets = to;
  q.parity = parity;
  q.max_length = max_len;
  q.allowed = allowed;
  return find_parity_path(g, q);
}

CrossResult find_cross(const Graph& g, std::span<const int> c, int r, int s, double beta, int k, Rng& rng,
                       const CrossOptions& options) {
  if (r < 0 || s < 1) throw Error(ErrorCode::kInvalidArgument, "cross needs r >= 0 and s >= 1");
  if (!(beta > 0) || k < 3) throw Error(ErrorCode::kInvalidArgument, "cross needs beta > 0 and k >= 3");
  const int n = g.num_vertices();
  const double gamma = beta / (3.0 * (1.0 + beta));
  const int floor_s = options.s_floor < 0 ? static_cast<int>(std::ceil(1.0 / gamma - 1e-9)) : options.s_floor;
  const int grow = std::max(s, floor_s);
  const double spare = options.spare > 0 ? options.spare : 1.0 + 1.0 / gamma;
  const int r_prime = std::max(r, static_cast<int>(std::ceil(spare * r - 1e-9)));

  CrossResult out;
  const VertexSet outer = normalized(VertexSet(c.begin(), c.end()));
  const double limit = static_cast<double>(outer.size()) / k;
  VertexSet local = outer;
  VertexSet a;
  std::vector<VertexSet> family;
  while (static_cast<int>(family.size()) < r_prime) {
    if (static_cast<double>(a.size()) >= limit) {
      throw Error(ErrorCode::kBudget, "cross search discarded " + std::to_string(a.size()) + " >= |C|/k vertices");
    }
    std::optional<VertexSet> u = grow_connected(g, local, grow);
    if (!u) {
      throw Error(ErrorCode::kBudget, "no connected set of size " + std::to_string(grow) + " left after " +
                                          std::to_string(family.size()) + " branches");
    }
    local = set_difference(local, *u);
    family.push_back(std::move(*u));
    ++out.grown;
    FixExpansionResult fx = fix_expansion(g, local, a, gamma);
    local = std::move(fx.c);
    a = std::move(fx.a);

    // Greedy maximal family with |union N(F, C)| < gamma s |F|.
    const std::vector<char> cmask = make_mask(n, local);
    std::vector<VertexSet> nbrs;
    for (const VertexSet& f : family) nbrs.push_back(neighborhood_in(g, f, cmask));
    std::vector<char> taken(family.size(), 0);
    VertexSet united;
    int size = 0;
    while (true) {
      int best = -1;
      std::size_t best_gain = 0;
      for (std::size_t i = 0; i < family.size(); ++i) {
        if (taken[i]) continue;
        const std::size_t gain = set_difference(nbrs[i], united).size();
        if (best < 0 || gain < best_gain) {
          best = static_cast<int>(i);
          best_gain = gain;
        }
      }
      if (best < 0) break;
      VertexSet merged = set_union(united, nbrs[idx(best)]);
      if (static_cast<double>(merged.size()) >= gamma * grow * (size + 1)) break;
      united = std::move(merged);
      taken[idx(best)] = 1;
      ++size;
    }
    if (size > 0) {
      std::vector<VertexSet> kept;
      for (std::size_t i = 0; i < family.size(); ++i) {
        if (taken[i]) {
          a = set_union(a, family[i]);
        } else {
          kept.push_back(std::move(family[i]));
        }
      }
      family = std::move(kept);
      out.filtered += size;
    }
  }

  const std::vector<char> cmask = make_mask(n, local);
  const int min_degree = options.center_needs_spare ? r_prime : r;
  std::vector<std::pair<int, std::uint64_t>> candidates;
  std::vector<int> degree_in(idx(n), 0);
  for (int v : local) {
    for (int w : g.neighbors(v)) degree_in[idx(v)] += cmask[idx(w)];
    if (degree_in[idx(v)] >= min_degree) candidates.emplace_back(v, rng.next());
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kNoCenter, "no vertex of degree >= " + std::to_string(min_degree) + " in G[C]");
  }
  std::sort(candidates.begin(), candidates.end(), [&](const auto& x, const auto& y) {
    if (degree_in[idx(x.first)] != degree_in[idx(y.first)]) return degree_in[idx(x.first)] > degree_in[idx(y.first)];
    return x.second < y.second;
  });

  const int attempts = std::min<int>(static_cast<int>(candidates.size()), std::max(1, options.center_attempts));
  for (int t = 0; t < attempts; ++t) {
    const int v = candidates[idx(t)].first;
    std::vector<char> allowed = cmask;
    allowed[idx(v)] = 0;
    std::vector<VertexSet> reps;
    for (const VertexSet& f : family) reps.push_back(neighborhood_in(g, f, allowed));
    const std::vector<int> pick = transversal(reps, n);
    VertexSet targets;
    std::vector<int> family_of(idx(n), -1);
    for (std::size_t i = 0; i < pick.size(); ++i) {
      if (pick[i] < 0) continue;
      targets.push_back(pick[i]);
      family_of[idx(pick[i])] = static_cast<int>(i);
    }
    normalize(targets);
    if (static_cast<int>(targets.size()) < r) continue;
    VertexSet starts;
    for (int w : g.neighbors(v)) {
      if (allowed[idx(w)]) starts.push_back(w);
    }
    const std::vector<Path> paths = vertex_disjoint_paths(g, starts, targets, r, allowed);
    if (static_cast<int>(paths.size()) < r) continue;
    Cross cross;
    cross.center = v;
    for (const Path& p : paths) {
      VertexSet branch = set_union(normalized(p.vertices), family[idx(family_of[idx(p.back())])]);
      cross.branches.push_back(trim_connected(g, branch, p.front(), s));
    }
    out.cross = std::move(cross);
    out.c = set_difference(outer, out.cross.vertices());
    out.a_local = std::move(a);
    return out;
  }
  throw Error(ErrorCode::kNoCenter, "none of " + std::to_string(attempts) + " candidate centers reaches " +
                                        std::to_string(r) + " branches by disjoint paths");
}

EmbedState EmbedState::initial(int n, const MultiGraph& h) {
  EmbedState s;
  s.n = n;
  s.c = all_vertices(n);
  s.vertices.resize(idx(h.num_vertices()));
  s.paths.resize(idx(h.num_edges()));
  s.edge_sets.resize(idx(h.num_edges()));
  return s;
}

std::vector<std::string> partition_violations(const EmbedState& state) {
  std::vector<std::string> out;
  std::vector<std::string> where(idx(state.n));
  auto claim = [&](std::span<const int> set, const std::string& name) {
    for (int v : set) {
      if (v < 0 || v >= state.n) {
        out.push_back(name + " holds out-of-range vertex " + std::to_string(v));
        continue;
      }
      if (!where[idx(v)].empty()) {
        out.push_back("vertex " + std::to_string(v) + " in both " + where[idx(v)] + " and " + name);
      }
      where[idx(v)] = name;
    }
  };
  claim(state.a, "A");
  claim(state.a_prime, "A'");
  claim(state.c, "C");
  for (std::size_t x = 0; x < state.vertices.size(); ++x) {
    if (state.vertices[x]) claim(state.vertices[x]->cross.vertices(), "cross " + std::to_string(x));
  }
  for (std::size_t e = 0; e < state.edge_sets.size(); ++e) claim(state.edge_sets[e], "edge " + std::to_string(e));
  for (int v = 0; v < state.n; ++v) {
    if (where[idx(v)].empty()) out.push_back("vertex " + std::to_string(v) + " belongs to no part");
  }
  return out;
}

LedgerCheck check_ledger(const Graph& g, const EmbedState& state, double beta, int k, int previous_c) {
  LedgerCheck out;
  const int c = static_cast<int>(state.c.size());
  const int a = static_cast<int>(state.a.size());
  const int ap = static_cast<int>(state.a_prime.size());
  if (c > previous_c) out.violations.push_back("|C| grew from " + std::to_string(previous_c) + " to " + std::to_string(c));
  if (c < state.n * (1.0 - 2.0 / k)) {
    out.violations.push_back("|C| = " + std::to_string(c) + " < n(1 - 2/k)");
  }
  if (a > 0) {
    const int nac = boundary_size(g, state.a, state.c);
    if (nac >= beta * a) {
      out.violations.push_back("N(A, C) = " + std::to_string(nac) + " >= beta|A| with |A| = " + std::to_string(a));
    }
    if (ap >= beta * a / 2) {
      out.violations.push_back("|A'| = " + std::to_string(ap) + " >= beta|A|/2 with |A| = " + std::to_string(a));
    }
  }
  return out;
}

EmbedState unembed_vertex(EmbedState state, const MultiGraph& h, int x) {
  if (x < 0 || x >= h.num_vertices() || !state.embedded(x)) {
    throw Error(ErrorCode::kInvalidArgument, "vertex " + std::to_string(x) + " is not embedded");
  }
  EmbeddedVertex ev = std::move(*state.vertices[idx(x)]);
  state.vertices[idx(x)].reset();
  VertexSet w{ev.cross.center};
  for (std::size_t i = 0; i < ev.cross.branches.size(); ++i) {
    const VertexSet& branch = ev.cross.branches[i];
    const int e = ev.branch_edge[i];
    if (e < 0 || !state.paths[idx(e)]) {
      state.a = set_union(state.a, branch);
      continue;
    }
    w = set_union(w, branch);
    w = set_union(w, state.edge_sets[idx(e)]);
    state.paths[idx(e)].reset();
    state.edge_sets[idx(e)].clear();
    const int y = h.other_end(e, x);
    if (y != x && state.embedded(y)) {
      for (int& used : state.vertices[idx(y)]->branch_edge) {
        if (used == e) used = -1;
      }
    }
  }
  state.a_prime = set_union(state.a_prime, w);
  return state;
}

EmbedOutcome embed_graph(const MultiGraph& h, const Graph& g, const EmbedParams& params, std::span<const int> parities,
                         Rng& rng, const EmbedOptions& options) {
  const int n = g.num_vertices();
  const int nh = h.num_vertices();
  const int mh = h.num_edges();
  if (!parities.empty() && static_cast<int>(parities.size()) != mh) {
    throw Error(ErrorCode::kMismatch, "need one parity per H edge");
  }
  for (int p : parities) {
    if (p != 0 && p != 1 && p != kAnyParity) throw Error(ErrorCode::kInvalidArgument, "parity must be 0, 1 or any");
  }
  for (const Edge& e : h.edges()) {
    if (e.u == e.v) throw Error(ErrorCode::kInvalidArgument, "H may not have loops");
  }
  if (nh > n) throw Error(ErrorCode::kSize, "H has more vertices than G");

  EmbedOutcome out;
  EmbedState& state = out.state;
  EmbedDiagnostics& diag = out.diagnostics;
  state = EmbedState::initial(n, h);
  if (params.non_paper) diag.warnings.push_back("engineering mode: s, r(d) and cross constants differ from paper mode");
  double footprint = 0;
  for (int x = 0; x < nh; ++x) footprint += params.r(h.degree(x));
  footprint = (footprint + mh) * params.s;
  if (footprint > params.beta * n / (2.0 * params.k)) {
    diag.warnings.push_back("embedding footprint " + std::to_string(static_cast<long long>(footprint)) +
                            " exceeds beta n/2k; the size hypothesis fails");
  }

  CrossOptions cross_options = options.cross;
  cross_options.spare = params.cross_spare;
  cross_options.s_floor = params.cross_s_floor;
  cross_options.center_needs_spare = params.cross_center_spare;
  const int max_iterations = options.max_iterations > 0 ? options.max_iterations : 4 * (nh + mh) + 8;
  int previous_c = n;

  auto record = [&](const std::string& step) {
    const auto broken = partition_violations(state);
    if (!broken.empty()) throw Error(ErrorCode::kInvariant, step + ": " + broken.front());
    const LedgerCheck ledger = check_ledger(g, state, params.beta, params.k, previous_c);
    previous_c = static_cast<int>(state.c.size());
    for (const std::string& v : ledger.violations) {
      if (diag.ledger_violations.size() < 64) diag.ledger_violations.push_back(step + ": " + v);
    }
    if (!ledger.violations.empty() && params.mode == EmbedMode::kPaper) {
      std::ostringstream dump;
      dump << step << ": " << ledger.violations.front() << " (|A|=" << state.a.size()
           << " |A'|=" << state.a_prime.size() << " |C|=" << state.c.size() << ")";
      diag.failure = "invariant";
      diag.message = dump.str();
      return false;
    }
    return true;
  };
  auto restore = [&](const std::string& step) {
    FixExpansionResult fx = fix_expansion(g, state.c, state.a, params.beta);
    state.c = std::move(fx.c);
    state.a = std::move(fx.a);
    return record(step);
  };
  auto free_branch = [&](int z) {
    const EmbeddedVertex& ev = *state.vertices[idx(z)];
    for (std::size_t i = 0; i < ev.cross.branches.size(); ++i) {
      if (ev.branch_edge[i] >= 0) continue;
      const VertexSet& u = ev.cross.branches[i];
      if (boundary_size(g, u, state.c) >= params.beta * static_cast<double>(u.size())) return static_cast<int>(i);
    }
    return -1;
  };

  int iterations = 0;
  while (diag.failure.empty()) {
    int x = -1;
    for (int v = 0; v < nh && x < 0; ++v) {
      if (!state.embedded(v)) x = v;
    }
    if (x < 0) break;
    if (static_cast<double>(state.a.size()) >= static_cast<double>(n) / params.k) {
      diag.failure = "budget";
      diag.message = "|A| = " + std::to_string(state.a.size()) + " reached n/k";
      break;
    }
    if (++iterations > max_iterations) {
      diag.failure = "iteration-cap";
      diag.message = "gave up after " + std::to_string(max_iterations) + " vertex embeddings";
      break;
    }

    CrossResult found;
    try {
      found = find_cross(g, state.c, params.r(h.degree(x)), params.s, params.beta, params.k, rng, cross_options);
    } catch (const Error& e) {
      diag.failure = e.code() == ErrorCode::kNoCenter ? "no-center" : "budget";
      diag.message = "H-vertex " + std::to_string(x) + ": " + e.what();
      break;
    }
    EmbeddedVertex ev;
    ev.branch_edge.assign(found.cross.branches.size(), -1);
    ev.cross = std::move(found.cross);
    state.vertices[idx(x)] = std::move(ev);
    state.c = std::move(found.c);
    ++diag.crosses;
    if (!record("cross " + std::to_string(x)) || !restore("expansion after cross " + std::to_string(x))) break;

    for (int e : h.incident_edges(x)) {
      if (!state.embedded(x)) break;
      const int y = h.other_end(e, x);
      if (!state.embedded(y) || state.paths[idx(e)]) continue;
      const int ux = free_branch(x);
      const int uy = free_branch(y);
      if (ux < 0 || uy < 0) {
        const int z = uy < 0 ? y : x;
        state = unembed_vertex(std::move(state), h, z);
        ++diag.unembeds;
        if (!record("unembed " + std::to_string(z))) break;
        continue;
      }
      const Cross& cx = state.vertices[idx(x)]->cross;
      const Cross& cy = state.vertices[idx(y)]->cross;
      const VertexSet& bx = cx.branches[idx(ux)];
      const VertexSet& by = cy.branches[idx(uy)];
      const VertexSet region = set_union(set_union(state.c, bx), by);
      const VertexSet from = set_intersection(g.neighbors(cx.center), bx);
      const VertexSet to = set_intersection(g.neighbors(cy.center), by);
      const int want = parities.empty() ? kAnyParity : parities[idx(e)];
      const int cap = params.path_max_len == kInf ? kInf : params.path_max_len - 2;
      std::optional<Path> inner;
      bool exhausted = false;
      for (int p = 0; p < 2; ++p) {
        if (want != kAnyParity && want != p) continue;
        ParityPathResult res = parity_path_between_sets(g, region, from, to, p, cap);
        exhausted = exhausted || res.budget_exhausted;
        if (res.path && (!inner || res.path->length() < inner->length())) inner = std::move(res.path);
      }
      if (!inner) {
        diag.failure = "parity-routing";
        diag.message = "no path for H-edge " + std::to_string(e) + (exhausted ? " (search budget exhausted)" : "");
        break;
      }
      Path full{{cx.center}};
      full.vertices.insert(full.vertices.end(), inner->vertices.begin(), inner->vertices.end());
      full.vertices.push_back(cy.center);
      state.edge_sets[idx(e)] = set_intersection(normalized(inner->vertices), state.c);
      state.c = set_difference(state.c, state.edge_sets[idx(e)]);
      state.vertices[idx(x)]->branch_edge[idx(ux)] = e;
      state.vertices[idx(y)]->branch_edge[idx(uy)] = e;
      if (h.edge(e).u != x) std::reverse(full.vertices.begin(), full.vertices.end());
      state.paths[idx(e)] = std::move(full);
      ++diag.edge_paths;
      if (!record("edge " + std::to_string(e)) || !restore("expansion after edge " + std::to_string(e))) break;
    }
  }

  diag.final_a = static_cast<int>(state.a.size());
  diag.final_a_prime = static_cast<int>(state.a_prime.size());
  diag.final_c = static_cast<int>(state.c.size());
  if (diag.failure == "budget") {
    PostMortem pm;
    pm.discarded = diag.final_a;
    const std::vector<char> in_a = make_mask(n, state.a);
    VertexSet boundary;
    for (int v : state.a) {
      for (int w : g.neighbors(v)) {
        if (!in_a[idx(w)]) boundary.push_back(w);
      }
    }
    pm.neighborhood = static_cast<int>(normalized(std::move(boundary)).size());
    const int rest = n - pm.discarded - pm.neighborhood;
    pm.balanced = pm.discarded <= 2.0 * n / 3 && rest <= 2.0 * n / 3;
    pm.separator_bound = separator_lower_bound(params.alpha, n);
    if (n <= exact_limit()) {
      const ExpansionReport rep = vertex_expansion_exact(g);
      pm.alpha_certified = rep.alpha_exact && *rep.alpha_exact >= params.alpha - 1e-12;
    }
    pm.alarm = pm.alpha_certified && pm.balanced && pm.neighborhood < pm.separator_bound;
    diag.post_mortem = pm;
  }
  if (!diag.failure.empty()) return out;

  TopologicalEmbedding emb;
  emb.sigma.resize(idx(nh));
  for (int x = 0; x < nh; ++x) emb.sigma[idx(x)] = state.vertices[idx(x)]->cross.center;
  for (int e = 0; e < mh; ++e) {
    emb.paths.push_back(*state.paths[idx(e)]);
    emb.requested.push_back(parities.empty() ? kAnyParity : parities[idx(e)]);
    emb.achieved.push_back(emb.paths.back().length() % 2);
  }
  out.embedding = std::move(emb);
  return out;
}

VerifyReport verify_embedding(const MultiGraph& h, const Graph& g, const TopologicalEmbedding& emb,
                              std::span<const int> parities) {
  VerifyReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  const int n = g.num_vertices();
  const int nh = h.num_vertices();
  const int mh = h.num_edges();
  if (static_cast<int>(emb.sigma.size()) != nh) {
    fail("sigma has " + std::to_string(emb.sigma.size()) + " entries for " + std::to_string(nh) + " H-vertices");
    return rep;
  }
  if (static_cast<int>(emb.paths.size()) != mh) {
    fail("embedding has " + std::to_string(emb.paths.size()) + " paths for " + std::to_string(mh) + " H-edges");
    return rep;
  }
  std::vector<int> image_of(idx(n), -1);
  for (int x = 0; x < nh; ++x) {
    const int v = emb.sigma[idx(x)];
    if (v < 0 || v >= n) {
      fail("sigma(" + std::to_string(x) + ") out of range");
      return rep;
    }
    if (image_of[idx(v)] >= 0) {
      fail("sigma not injective: H-vertices " + std::to_string(image_of[idx(v)]) + " and " + std::to_string(x) +
           " share " + std::to_string(v));
    }
    image_of[idx(v)] = x;
  }
  std::vector<int> owner(idx(n), -1);
  std::vector<std::pair<int, int>> direct;
  for (int e = 0; e < mh; ++e) {
    const std::vector<int>& p = emb.paths[idx(e)].vertices;
    const std::string name = "path " + std::to_string(e);
    if (p.size() < 2) {
      fail(name + " has fewer than two vertices");
      continue;
    }
    bool in_range = true;
    for (int v : p) in_range = in_range && v >= 0 && v < n;
    if (!in_range) {
      fail(name + " has a vertex out of range");
      continue;
    }
    const int su = emb.sigma[idx(h.edge(e).u)];
    const int sv = emb.sigma[idx(h.edge(e).v)];
    if (!((p.front() == su && p.back() == sv) || (p.front() == sv && p.back() == su))) {
      fail(name + " does not join the images of its H-edge ends");
    }
    std::vector<int> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail(name + " repeats a vertex");
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      if (!g.has_edge(p[i], p[i + 1])) {
        fail(name + " uses non-edge " + std::to_string(p[i]) + "-" + std::to_string(p[i + 1]));
      }
    }
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      const int v = p[i];
      if (image_of[idx(v)] >= 0) {
        fail(name + " passes through the image of H-vertex " + std::to_string(image_of[idx(v)]));
      }
      if (owner[idx(v)] >= 0 && owner[idx(v)] != e) {
        fail("paths " + std::to_string(owner[idx(v)]) + " and " + std::to_string(e) + " share internal vertex " +
             std::to_string(v));
      }
      owner[idx(v)] = e;
    }
    if (p.size() == 2) {
      for (const auto& [other, key] : direct) {
        if (key == std::min(p[0], p[1]) * n + std::max(p[0], p[1])) {
          fail("paths " + std::to_string(other) + " and " + std::to_string(e) + " use the same edge");
        }
      }
      direct.emplace_back(e, std::min(p[0], p[1]) * n + std::max(p[0], p[1]));
    }
    const int requested = parities.empty() ? kAnyParity : parities[idx(e)];
    const int length = static_cast<int>(p.size()) - 1;
    if (requested != kAnyParity && length % 2 != requested) {
      fail("parity violation on " + name + ": requested " + (requested ? "odd" : "even") + ", length " +
           std::to_string(length));
    }
  }
  return rep;
}

}  // namespace minorforge
