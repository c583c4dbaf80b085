#include "minorforge/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minorforge/matching.hpp"
#include "minorforge/parallel.hpp"
#include "minorforge/traversal.hpp"

namespace minorforge {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

bool fraction_ok(int in_s, int deg, double c, double eps) {
  if (deg == 0) return true;
  const double f = static_cast<double>(in_s) / deg;
  return f >= c - eps - kWindowSlack && f <= c + eps + kWindowSlack;
}

bool size_ok(std::size_t s, int n, double c, double eps) {
  return std::abs(static_cast<double>(s) - c * n) <= eps * n + kWindowSlack;
}

std::string histogram_text(const std::vector<std::int64_t>& hist) {
  std::vector<int> order;
  for (std::size_t v = 0; v < hist.size(); ++v) {
    if (hist[v] > 0) order.push_back(static_cast<int>(v));
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return hist[idx(a)] > hist[idx(b)]; });
  std::ostringstream out;
  out << "violations per vertex (top " << std::min<std::size_t>(order.size(), 8) << "):";
  for (std::size_t i = 0; i < order.size() && i < 8; ++i) out << ' ' << order[i] << 'x' << hist[idx(order[i])];
  return out.str();
}

int max_degree_within(const Graph& g, const std::vector<char>& in_u, std::span<const int> u) {
  int best = 0;
  for (int v : u) {
    int d = 0;
    for (int w : g.neighbors(v)) d += in_u[idx(w)] ? 1 : 0;
    best = std::max(best, d);
  }
  return best;
}

VertexSet sample_subset(std::span<const int> from, std::size_t k, Rng& rng) {
  std::vector<int> pool(from.begin(), from.end());
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return normalized(std::move(pool));
}

}  // namespace

Cut degree_balanced_cut(const Graph& g, double c, double eps, Rng& rng, std::int64_t max_resamples) {
  if (c < 0 || c > 1) throw Error(ErrorCode::kInvalidArgument, "c must lie in [0, 1]");
  if (eps < 0) throw Error(ErrorCode::kInvalidArgument, "eps must be non-negative");
  const int n = g.num_vertices();
  const std::int64_t budget = max_resamples > 0 ? max_resamples : std::int64_t{100000} * std::max(n, 1);
  const std::int64_t mt_phase = std::int64_t{50} * std::max(n, 1);
  std::vector<int> lo(idx(n)), hi(idx(n));
  for (int v = 0; v < n; ++v) {
    const int d = g.degree(v);
    lo[idx(v)] = d == 0 ? 0 : static_cast<int>(std::ceil((c - eps - kWindowSlack) * d));
    hi[idx(v)] = d == 0 ? 0 : static_cast<int>(std::floor((c + eps + kWindowSlack) * d));
  }
  auto excess = [&](int v, int cnt) { return std::max({0, lo[idx(v)] - cnt, cnt - hi[idx(v)]}); };

  std::vector<std::int64_t> hist(idx(n), 0);
  std::vector<char> bit(idx(n));
  std::vector<int> count(idx(n));
  std::vector<int> violators;
  std::vector<int> pos(idx(n), -1);

  auto refresh = [&](int v) {
    const bool bad = excess(v, count[idx(v)]) > 0;
    if (bad && pos[idx(v)] < 0) {
      pos[idx(v)] = static_cast<int>(violators.size());
      violators.push_back(v);
    } else if (!bad && pos[idx(v)] >= 0) {
      const int last = violators.back();
      violators[idx(pos[idx(v)])] = last;
      pos[idx(last)] = pos[idx(v)];
      violators.pop_back();
      pos[idx(v)] = -1;
    }
  };
  auto set_bit = [&](int w, char nb) {
    if (nb == bit[idx(w)]) return;
    bit[idx(w)] = nb;
    for (int x : g.neighbors(w)) {
      count[idx(x)] += nb ? 1 : -1;
      refresh(x);
    }
  };
  // Change in total excess if w flips.
  auto flip_gain = [&](int w) {
    const int step = bit[idx(w)] ? -1 : 1;
    int delta = 0;
    for (int x : g.neighbors(w)) delta += excess(x, count[idx(x)] + step) - excess(x, count[idx(x)]);
    return delta;
  };

  Cut cut;
  cut.c = c;
  cut.eps = eps;
  std::int64_t used = 0;
  std::vector<int> candidates;
  for (int restart = 0;; ++restart) {
    for (int v = 0; v < n; ++v) bit[idx(v)] = rng.bernoulli(c) ? 1 : 0;
    std::fill(count.begin(), count.end(), 0);
    for (int v = 0; v < n; ++v) {
      for (int w : g.neighbors(v)) count[idx(v)] += bit[idx(w)];
    }
    violators.clear();
    std::fill(pos.begin(), pos.end(), -1);
    for (int v = 0; v < n; ++v) refresh(v);

    std::int64_t local = 0;
    while (!violators.empty()) {
      if (used >= budget) {
        throw Error(ErrorCode::kBudget, "degree-balanced cut not found within " + std::to_string(budget) +
                                            " resamples; " + histogram_text(hist));
      }
      const int u = violators[idx(static_cast<int>(rng.below(violators.size())))];
      ++hist[idx(u)];
      ++used;
      if (local++ < mt_phase) {
        for (int w : g.neighbors(u)) set_bit(w, rng.bernoulli(c) ? 1 : 0);
        continue;
      }
      // Focused repair: flip one neighbor of u that moves u toward its window.
      const char want = count[idx(u)] < lo[idx(u)] ? 0 : 1;
      candidates.clear();
      for (int w : g.neighbors(u)) {
        if (bit[idx(w)] == want) candidates.push_back(w);
      }
      int pick = candidates[idx(static_cast<int>(rng.below(candidates.size())))];
      if (!rng.bernoulli(0.2)) {
        int best = flip_gain(pick);
        for (int w : candidates) {
          const int gain = flip_gain(w);
          if (gain < best) {
            best = gain;
            pick = w;
          }
        }
      }
      set_bit(pick, want ? 0 : 1);
    }
    std::size_t s_size = static_cast<std::size_t>(std::count(bit.begin(), bit.end(), 1));
    if (size_ok(s_size, n, c, eps)) {
      cut.resamples = used;
      cut.restarts = restart;
      for (int v = 0; v < n; ++v) (bit[idx(v)] ? cut.s : cut.t).push_back(v);
      return cut;
    }
    if (++used >= budget) {
      throw Error(ErrorCode::kBudget, "degree-balanced cut: size window |S| in cn +- eps*n never met within budget");
    }
  }
}

bool verify_cut(const Graph& g, const Cut& cut) {
  const int n = g.num_vertices();
  std::vector<int> side(idx(n), -1);
  for (int v : cut.s) {
    if (v < 0 || v >= n || side[idx(v)] != -1) return false;
    side[idx(v)] = 1;
  }
  for (int v : cut.t) {
    if (v < 0 || v >= n || side[idx(v)] != -1) return false;
    side[idx(v)] = 0;
  }
  if (std::find(side.begin(), side.end(), -1) != side.end()) return false;
  if (!size_ok(cut.s.size(), n, cut.c, cut.eps)) return false;
  for (int v = 0; v < n; ++v) {
    int in_s = 0;
    for (int w : g.neighbors(v)) in_s += side[idx(w)];
    if (!fraction_ok(in_s, g.degree(v), cut.c, cut.eps)) return false;
  }
  return true;
}

bool is_odd_cycle(const Graph& g, const OddCycle& c) {
  const int len = c.length();
  if (len < 3 || len % 2 == 0) return false;
  VertexSet sorted = normalized(c.vertices);
  if (static_cast<int>(sorted.size()) != len) return false;
  for (int i = 0; i < len; ++i) {
    if (!g.has_edge(c.vertices[idx(i)], c.vertices[idx((i + 1) % len)])) return false;
  }
  return true;
}

OddCycleSearch find_odd_cycle(const Graph& g, int min_len, int max_len, std::span<const int> forbidden,
                              std::int64_t node_budget) {
  if (min_len < 3 || min_len % 2 == 0) throw Error(ErrorCode::kInvalidArgument, "min_len must be odd and >= 3");
  OddCycleSearch out;
  const std::vector<char> blocked = make_mask(g.num_vertices(), forbidden);
  VertexSet keep;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!blocked[idx(v)]) keep.push_back(v);
  }
  const InducedSubgraph h = induced_subgraph(g, keep);
  const Graph& hg = h.graph;
  const int m = hg.num_vertices();
  if (max_len < min_len) return out;

  // The shortest odd closed walk overall is a simple cycle.
  int shortest = kInf;
  int anchor = -1;
  for (int v = 0; v < m; ++v) {
    const int len = parity_bfs(hg, v).odd[idx(v)];
    if (len < shortest) {
      shortest = len;
      anchor = v;
    }
  }
  if (shortest == kInf || shortest > max_len) return out;
  auto to_cycle = [&](const std::vector<int>& local) {
    OddCycle c;
    for (int v : local) c.vertices.push_back(h.to_parent[idx(v)]);
    return c;
  };
  if (shortest >= min_len) {
    auto walk = parity_walk(hg, anchor, anchor, 1);
    walk->vertices.pop_back();
    out.cycle = to_cycle(walk->vertices);
    return out;
  }

  // Cycles whose smallest vertex is v: an even simple path v -> w inside
  // vertices >= v, closed by the edge w v.
  std::int64_t remaining = node_budget;
  int best_len = kInf;
  std::vector<int> best;
  std::vector<char> allowed(idx(m), 1);
  for (int v = 0; v < m; ++v) {
    if (v > 0) allowed[idx(v - 1)] = 0;
    std::vector<int> targets;
    for (int w : hg.neighbors(v)) {
      if (w > v) targets.push_back(w);
    }
    if (targets.size() < 2) continue;
    const int src[] = {v};
    ParityPathQuery q;
    q.sources = src;
    q.targets = targets;
    q.parity = 0;
    q.min_length = min_len - 1;
    q.max_length = std::min(max_len, best_len - 2) - 1;
    q.allowed = allowed;
    q.node_budget = remaining;
    if (q.max_length < q.min_length) continue;
    const ParityPathResult r = find_parity_path(hg, q);
    remaining -= r.nodes;
    if (r.budget_exhausted || remaining <= 0) {
      out.budget_exhausted = true;
      break;
    }
    if (r.path && r.path->length() + 1 < best_len) {
      best_len = r.path->length() + 1;
      best = r.path->vertices;
    }
  }
  if (!best.empty()) out.cycle = to_cycle(best);
  return out;
}

std::optional<OddCycle> shortest_odd_cycle(const Graph& g, int min_len, int max_len, std::span<const int> forbidden) {
  return find_odd_cycle(g, min_len, max_len, forbidden).cycle;
}

double robustness_analytic_bound(double d, double kappa) {
  if (kappa <= 0 || kappa > 1) throw Error(ErrorCode::kInvalidArgument, "kappa must lie in (0, 1]");
  return d * (kappa - 2.0 * std::sqrt((1.0 - kappa) / (kappa * d)));
}

ProbeReport robustness_probe(const Graph& g, double kappa, int d_min, int trials, Rng& rng, int jobs) {
  if (kappa <= 0 || kappa > 1) throw Error(ErrorCode::kInvalidArgument, "kappa must lie in (0, 1]");
  const int n = g.num_vertices();
  ProbeReport r;
  r.trials = trials;
  r.d_min = d_min;
  r.sample_size = std::min(n, static_cast<int>(std::ceil(kappa * n - 1e-9)));
  if (const auto d = g.regular_degree(); d && *d > 0) r.analytic_bound = robustness_analytic_bound(*d, kappa);
  const Rng base = rng.split(rng.next());
  const VertexSet all = all_vertices(n);
  std::vector<int> observed(idx(std::max(trials, 0)), 0);
  parallel_for(trials, jobs, [&](int i) {
    Rng local = base.split(static_cast<std::uint64_t>(i));
    const VertexSet u = sample_subset(all, idx(r.sample_size), local);
    const std::vector<char> in_u = make_mask(n, u);
    observed[idx(i)] = max_degree_within(g, in_u, u);
  });
  r.min_observed_max_degree = trials > 0 ? *std::min_element(observed.begin(), observed.end()) : 0;
  for (int i = 0; i < trials; ++i) {
    if (observed[idx(i)] < d_min) {
      r.falsified = true;
      r.first_falsifying_trial = i;
      break;
    }
  }
  return r;
}

const char* to_string(DiagnosticStatus s) {
  switch (s) {
    case DiagnosticStatus::kCertified:
      return "certified";
    case DiagnosticStatus::kFalsified:
      return "falsified";
    case DiagnosticStatus::kHeuristic:
      return "heuristic";
    case DiagnosticStatus::kPassedTrials:
      return "passed-trials";
    case DiagnosticStatus::kSkipped:
      return "skipped";
  }
  return "unknown";
}

double partition_alpha(double c, double eps) { return (1.0 - c - 2.0 * eps) / (2.0 * (1.0 - c - eps)); }

VertexSet random_odd_subset(std::span<const int> t, Rng& rng) {
  if (t.empty()) return {};
  const std::size_t choices = (t.size() + 1) / 2;
  const std::size_t k = 2 * static_cast<std::size_t>(rng.below(choices)) + 1;
  return sample_subset(t, k, rng);
}

PartitionResult partition_pipeline(const Graph& g, Rng& rng, const PartitionConfig& config) {
  const auto d = g.regular_degree();
  if (!d) throw Error(ErrorCode::kNonRegular, "partition pipeline needs a regular graph");
  const int n = g.num_vertices();
  PartitionResult r;
  r.config = config;
  r.seed = rng.seed();
  r.alpha = partition_alpha(config.c, config.eps);
  if (config.eps * n < 1.0 || config.kappa * n < 1.0) {
    r.degenerate = true;
    std::ostringstream why;
    why << "n=" << n << " too small: eps*n=" << config.eps * n << ", kappa*n=" << config.kappa * n
        << " (both must be >= 1 for the windows to mean anything)";
    r.degenerate_reason = why.str();
    return r;
  }

  Rng cut_rng = rng.split(0);
  Rng probe_rng = rng.split(1);
  const Rng pm_rng = rng.split(2);
  r.cut = degree_balanced_cut(g, config.c, config.eps, cut_rng, config.max_resamples);
  r.t = r.cut.t;
  const int tsize = static_cast<int>(r.t.size());

  // (iii) expansion of G[T].
  if (tsize >= 2) {
    const InducedSubgraph h = induced_subgraph(g, r.t);
    r.expansion = expansion_report(h.graph);
    if (r.expansion.alpha_exact) {
      if (*r.expansion.alpha_exact >= r.alpha - 1e-12) {
        r.expansion_status = DiagnosticStatus::kCertified;
      } else {
        r.expansion_status = DiagnosticStatus::kFalsified;
        VertexSet w;
        for (int v : *r.expansion.witness_cut) w.push_back(h.to_parent[idx(v)]);
        r.expansion_violation = w;
      }
    } else if (r.expansion.alpha_spectral_lower >= r.alpha - 1e-12) {
      r.expansion_status = DiagnosticStatus::kCertified;
    } else {
      const SparseCutResult cut = find_sparse_cut(g, r.t, r.alpha);
      if (cut.cut) {
        r.expansion_status = DiagnosticStatus::kFalsified;
        r.expansion_violation = cut.cut;
      } else {
        r.expansion_status = DiagnosticStatus::kHeuristic;
      }
    }
  }

  // (ii) odd cycle of length in [ell, 3 c_{beta/2} log |T|] inside G[T].
  if (tsize >= 3) {
    const double beta = r.alpha / (3.0 * (1.0 + r.alpha));
    r.odd_cycle_min = config.ell;
    r.odd_cycle_max = static_cast<int>(std::floor(3.0 * c_alpha(beta / 2) * std::log2(static_cast<double>(tsize))));
    std::vector<int> outside = set_difference(all_vertices(n), r.t);
    const OddCycleSearch found = find_odd_cycle(g, r.odd_cycle_min, r.odd_cycle_max, outside);
    r.odd_cycle = found.cycle;
    r.odd_cycle_status = found.cycle ? DiagnosticStatus::kCertified
                         : found.budget_exhausted ? DiagnosticStatus::kHeuristic
                                                  : DiagnosticStatus::kFalsified;
  }

  // (i) max-degree robustness of G, probed.
  const int d_min = std::max(1, static_cast<int>(std::ceil(*d / 32.0)));
  r.robustness = robustness_probe(g, config.kappa, d_min, config.probe_trials, probe_rng, config.jobs);
  r.robustness_status = r.robustness.falsified ? DiagnosticStatus::kFalsified : DiagnosticStatus::kPassedTrials;

  // (iv) perfect matching of G \ U for random odd U inside T.
  if (n % 2 == 1 && tsize > 0) {
    std::vector<std::optional<VertexSet>> failures(idx(config.pm_trials));
    parallel_for(config.pm_trials, config.jobs, [&](int i) {
      Rng local = pm_rng.split(static_cast<std::uint64_t>(i));
      const VertexSet u = random_odd_subset(r.t, local);
      if (!perfect_matching_of(g, set_difference(all_vertices(n), u))) failures[idx(i)] = u;
    });
    r.pm_trials = config.pm_trials;
    for (auto& f : failures) {
      if (f) r.pm_failures.push_back(std::move(*f));
    }
    r.pm_successes = r.pm_trials - static_cast<int>(r.pm_failures.size());
    r.pm_status = r.pm_failures.empty() ? DiagnosticStatus::kPassedTrials : DiagnosticStatus::kFalsified;
  }
  return r;
}

}  // namespace minorforge
