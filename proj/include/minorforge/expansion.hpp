#pragma once

#include <optional>
#include <span>
#include <vector>

#include "minorforge/graph.hpp"

namespace minorforge {

/// Largest vertex count searched exhaustively; MINORFORGE_EXACT_LIMIT
/// overrides the default of 24 (clamped to 62).
int exact_limit();

struct ExpansionReport {
  /// min |N(U, V\U)|/|U| over nonempty U with |U| <= n/2; +inf when no such U.
  std::optional<double> alpha_exact;
  double alpha_spectral_lower = 0.0;
  std::optional<VertexSet> witness_cut;
  int witness_boundary = 0;
};

/// Exhaustive vertex expansion. Ties broken by (ratio, size, lexicographic
/// vertex list). Throws kSize when n exceeds exact_limit().
ExpansionReport vertex_expansion_exact(const Graph& g);

/// Exact when n <= exact_limit(), spectral bound only otherwise.
ExpansionReport expansion_report(const Graph& g);

/// lambda_2(L_G) / (2 * max degree); 0 for edgeless graphs.
double spectral_expansion_lower(const Graph& g);

struct SparseCutResult {
  /// U subset of C, |U| <= |C|/2, |N(U, C\U)| < beta|U|.
  std::optional<VertexSet> cut;
  /// True when the search was exhaustive, so an empty result certifies
  /// that G[C] is a beta-expander.
  bool exact = false;
};

/// Exhaustive below exact_limit(): the smallest violating set by
/// (size, lexicographic). Above it: the smallest component of a
/// disconnected G[C], else the best Fiedler sweep prefix.
SparseCutResult find_sparse_cut(const Graph& g, std::span<const int> c, double beta);

struct FixExpansionResult {
  VertexSet c;
  VertexSet a;
  /// Sets moved from C to A, in move order.
  std::vector<VertexSet> moved;
  /// Every sparse-cut search ran in exact mode.
  bool certified = true;
};

/// Moves violating sets from C to A until the cut search finds none.
FixExpansionResult fix_expansion(const Graph& g, std::span<const int> c, std::span<const int> a, double beta);

/// alpha*n / (3(1+alpha)): lower bound on balanced separators of an
/// alpha-expander.
double separator_lower_bound(double alpha, int n);

/// ceil(2(log n - 1)/log(1+alpha)) + 1, base-2 logs.
int diameter_upper_bound(double alpha, int n);

/// 2/log(1+alpha) + 3.
double c_alpha(double alpha);

/// |N(U, within \ U)|; `within` empty means all of V.
int boundary_size(const Graph& g, std::span<const int> u, std::span<const int> within = {});

}  // namespace minorforge
