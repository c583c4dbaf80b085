#pragma once

#include <span>
#include <vector>

#include "minorforge/graph.hpp"

namespace minorforge {

enum class MatrixKind { kAdjacency, kLaplacian };

const char* to_string(MatrixKind kind);

struct Spectrum {
  /// Ascending: eigenvalues[0] is the smallest.
  std::vector<double> eigenvalues;
  MatrixKind kind = MatrixKind::kAdjacency;

  /// 1-indexed, matching the usual lambda_1 <= ... <= lambda_n.
  double lambda(int k) const { return eigenvalues[static_cast<std::size_t>(k - 1)]; }
};

/// Dense row-major symmetric matrix of the graph.
std::vector<double> graph_matrix(const Graph& g, MatrixKind kind);

/// Ascending eigenvalues of a dense symmetric n x n row-major matrix.
/// Householder tridiagonalization followed by implicit QL.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

Spectrum spectrum(const Graph& g, MatrixKind kind);

struct FiedlerResult {
  double lambda2 = 0.0;
  /// Unit eigenvector of L_G for lambda2, orthogonal to the all-ones vector.
  std::vector<double> vector;
};

/// Second-smallest Laplacian eigenpair; requires n >= 2.
FiedlerResult fiedler_vector(const Graph& g);

/// -n*l1/(d-l1) for d-regular G, l1 the smallest adjacency eigenvalue.
double hoffman_bound(const Graph& g);

/// Twice the Hoffman value: any larger vertex set induces a non-bipartite
/// subgraph.
double non_bipartite_size_bound(const Graph& g);

struct MixingResult {
  double lhs = 0.0;
  double rhs = 0.0;
  /// max(|l1|, |l_{n-1}|) of the adjacency matrix.
  double lambda = 0.0;
};

/// |e(S,T) - d|S||T|/n| against lambda*sqrt(|S||T|); e counts ordered pairs
/// (u in S, v in T, uv an edge).
MixingResult mixing_discrepancy(const Graph& g, std::span<const int> s, std::span<const int> t);
/// Same, reusing a precomputed adjacency spectrum.
MixingResult mixing_discrepancy(const Graph& g, const Spectrum& adjacency, std::span<const int> s,
                                std::span<const int> t);

/// True only if n is even, lambda_2(L) > 0 and lambda_n(L) <= 2*lambda_2(L);
/// then a perfect matching exists. False says nothing.
bool pm_spectral_certificate(const Graph& g);

struct InterlacingReport {
  bool holds = true;
  /// First failing k (1-indexed) or 0.
  int first_violation = 0;
  double worst_slack = 0.0;
};

/// Checks delta(H) - l_{n-k+1}(A_G) <= l_k(L_H) <= Delta(H) - l_{m-k+1}(A_G)
/// for H = G[U] and every k in [m], with slack 1e-8.
InterlacingReport interlacing_report(const Graph& g, std::span<const int> u);
bool interlacing_check(const Graph& g, std::span<const int> u);

inline constexpr double kCertificateSlack = 1e-8;

}  // namespace minorforge
