#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minorforge/expansion.hpp"
#include "minorforge/graph.hpp"
#include "minorforge/rng.hpp"

namespace minorforge {

struct Cut {
  VertexSet s;
  VertexSet t;
  double c = 0.0;
  double eps = 0.0;
  std::int64_t resamples = 0;
  int restarts = 0;
};

/// Slack used when comparing fractions against the (c, eps) windows.
inline constexpr double kWindowSlack = 1e-9;

/// (c, eps)-degree-balanced cut by Moser-Tardos resampling: vertices join S
/// independently with probability c; while some vertex has a neighbor
/// fraction outside [c-eps, c+eps], the bits of its neighborhood are
/// redrawn. A final |S| outside cn +- eps*n restarts from scratch.
/// `max_resamples` <= 0 means 1e5 * n. Throws kBudget with a histogram of
/// the most frequently violating vertices.
Cut degree_balanced_cut(const Graph& g, double c, double eps, Rng& rng, std::int64_t max_resamples = 0);

/// Independent check of both cut conditions and that S, T partition V.
bool verify_cut(const Graph& g, const Cut& cut);

struct OddCycle {
  /// Cycle order; the closing edge joins back() to front().
  std::vector<int> vertices;
  int length() const { return static_cast<int>(vertices.size()); }
};

/// Closed, simple, odd, length >= 3, consecutive vertices adjacent.
bool is_odd_cycle(const Graph& g, const OddCycle& c);

struct OddCycleSearch {
  std::optional<OddCycle> cycle;
  /// The bounded simple-cycle search ran out of budget, so "none" is not
  /// a proof of absence.
  bool budget_exhausted = false;
};

/// Shortest odd cycle with min_len <= length <= max_len avoiding
/// `forbidden`. The unrestricted shortest odd cycle comes from per-vertex
/// parity BFS; longer cycles from a bounded simple-path search.
OddCycleSearch find_odd_cycle(const Graph& g, int min_len, int max_len, std::span<const int> forbidden = {},
                              std::int64_t node_budget = 2'000'000);
std::optional<OddCycle> shortest_odd_cycle(const Graph& g, int min_len, int max_len,
                                           std::span<const int> forbidden = {});

struct ProbeReport {
  int trials = 0;
  int sample_size = 0;
  int d_min = 0;
  /// Minimum over samples of the maximum degree of G[U].
  int min_observed_max_degree = 0;
  bool falsified = false;
  /// First falsifying trial, or -1.
  int first_falsifying_trial = -1;
  /// d(kappa - 2 sqrt((1-kappa)/(kappa d))) for d-regular G.
  std::optional<double> analytic_bound;
};

double robustness_analytic_bound(double d, double kappa);

/// Samples random U with |U| = ceil(kappa n). Can falsify max-degree
/// robustness, never certify it.
ProbeReport robustness_probe(const Graph& g, double kappa, int d_min, int trials, Rng& rng, int jobs = 1);

enum class DiagnosticStatus {
  kCertified,   // proven for this instance
  kFalsified,   // a concrete counterexample was found
  kHeuristic,   // searched, nothing found, not a proof
  kPassedTrials,  // every sampled trial passed
  kSkipped,
};

const char* to_string(DiagnosticStatus s);

struct PartitionConfig {
  double c = 0.75;
  double eps = 1.0 / 16;
  double kappa = 1.0 / 16;
  int ell = 7;
  int probe_trials = 50;
  int pm_trials = 50;
  int jobs = 1;
  std::int64_t max_resamples = 0;
};

/// (1-c-2 eps) / (2(1-c-eps)).
double partition_alpha(double c, double eps);

struct PartitionResult {
  PartitionConfig config;
  std::uint64_t seed = 0;
  bool degenerate = false;
  std::string degenerate_reason;
  Cut cut;
  VertexSet t;
  double alpha = 0.0;

  DiagnosticStatus expansion_status = DiagnosticStatus::kSkipped;
  ExpansionReport expansion;
  std::optional<VertexSet> expansion_violation;

  DiagnosticStatus odd_cycle_status = DiagnosticStatus::kSkipped;
  int odd_cycle_min = 0;
  int odd_cycle_max = 0;
  std::optional<OddCycle> odd_cycle;

  DiagnosticStatus robustness_status = DiagnosticStatus::kSkipped;
  ProbeReport robustness;

  DiagnosticStatus pm_status = DiagnosticStatus::kSkipped;
  int pm_trials = 0;
  int pm_successes = 0;
  /// Removed sets for which G \ U had no perfect matching.
  std::vector<VertexSet> pm_failures;
};

/// Degree-balanced cut and the four sampled/certified diagnostics on T.
PartitionResult partition_pipeline(const Graph& g, Rng& rng, const PartitionConfig& config = {});

/// One random odd-size subset of `t` (size uniform over odd values).
VertexSet random_odd_subset(std::span<const int> t, Rng& rng);

}  // namespace minorforge
