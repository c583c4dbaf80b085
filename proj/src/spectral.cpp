#include "minorforge/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "minorforge/kernels.hpp"
#include "minorforge/traversal.hpp"

namespace minorforge {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

struct Tridiagonal {
  std::vector<double> diag;
  /// off[i] couples i and i+1.
  std::vector<double> off;
  /// Reflector k acts on coordinates k+1..n-1: I - beta v v^T.
  std::vector<std::vector<double>> v;
  std::vector<double> beta;
};

// Householder reduction of a row-major symmetric matrix, destroying `a`.
Tridiagonal tridiagonalize(std::vector<double>& a, int n, bool keep_reflectors) {
  Tridiagonal t;
  t.diag.assign(idx(n), 0.0);
  t.off.assign(idx(std::max(n - 1, 0)), 0.0);
  auto at = [&](int r, int c) -> double& { return a[idx(r) * idx(n) + idx(c)]; };
  std::vector<double> v;
  std::vector<double> p;
  for (int k = 0; k + 2 < n; ++k) {
    const int m = n - k - 1;
    v.assign(idx(m), 0.0);
    for (int i = 0; i < m; ++i) v[idx(i)] = at(k + 1 + i, k);
    const double norm = std::sqrt(kernels::dot(v.data(), v.data(), idx(m)));
    t.diag[idx(k)] = at(k, k);
    if (norm == 0.0) {
      t.off[idx(k)] = 0.0;
      if (keep_reflectors) {
        t.v.emplace_back();
        t.beta.push_back(0.0);
      }
      continue;
    }
    const double alpha = v[0] > 0 ? -norm : norm;
    v[0] -= alpha;
    const double vv = kernels::dot(v.data(), v.data(), idx(m));
    const double beta = 2.0 / vv;
    // p = beta * A22 v; w = p - (beta/2)(v.p) v; A22 -= v w^T + w v^T.
    p.assign(idx(m), 0.0);
    for (int i = 0; i < m; ++i) p[idx(i)] = beta * kernels::dot(&at(k + 1 + i, k + 1), v.data(), idx(m));
    const double kfac = 0.5 * beta * kernels::dot(v.data(), p.data(), idx(m));
    kernels::axpy(-kfac, v.data(), p.data(), idx(m));
    for (int i = 0; i < m; ++i) {
      kernels::axpy2(-v[idx(i)], p.data(), -p[idx(i)], v.data(), &at(k + 1 + i, k + 1), idx(m));
    }
    t.off[idx(k)] = alpha;
    if (keep_reflectors) {
      t.v.push_back(v);
      t.beta.push_back(beta);
    }
  }
  if (n >= 2) {
    t.diag[idx(n - 2)] = at(n - 2, n - 2);
    t.off[idx(n - 2)] = at(n - 1, n - 2);
  }
  if (n >= 1) t.diag[idx(n - 1)] = at(n - 1, n - 1);
  return t;
}

// Implicit QL with Wilkinson-style shifts; eigenvalues only.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> off) {
  const int n = static_cast<int>(d.size());
  std::vector<double> e(idx(n), 0.0);
  for (int i = 0; i + 1 < n; ++i) e[idx(i)] = off[idx(i)];
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::abs(d[idx(m)]) + std::abs(d[idx(m + 1)]);
        if (std::abs(e[idx(m)]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 200) throw Error(ErrorCode::kInvariant, "QL iteration did not converge");
      double g = (d[idx(l + 1)] - d[idx(l)]) / (2.0 * e[idx(l)]);
      double r = std::hypot(g, 1.0);
      g = d[idx(m)] - d[idx(l)] + e[idx(l)] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool deflated = false;
      for (int i = m - 1; i >= l; --i) {
        const double f = s * e[idx(i)];
        const double b = c * e[idx(i)];
        r = std::hypot(f, g);
        e[idx(i + 1)] = r;
        if (r == 0.0) {
          d[idx(i + 1)] -= p;
          e[idx(m)] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[idx(i + 1)] - p;
        r = (d[idx(i)] - g) * s + 2.0 * c * b;
        p = s * r;
        d[idx(i + 1)] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[idx(l)] -= p;
      e[idx(l)] = g;
      e[idx(m)] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

// Solves (T - mu I) x = rhs by elimination with partial pivoting.
std::vector<double> solve_shifted(const Tridiagonal& t, double mu, std::vector<double> rhs) {
  const int n = static_cast<int>(t.diag.size());
  // Row i holds (lower, diag, upper, upper2) after pivoting.
  std::vector<double> dg(idx(n));
  std::vector<double> up(idx(n), 0.0);
  std::vector<double> up2(idx(n), 0.0);
  std::vector<double> lo(idx(n), 0.0);
  for (int i = 0; i < n; ++i) {
    dg[idx(i)] = t.diag[idx(i)] - mu;
    if (i + 1 < n) up[idx(i)] = t.off[idx(i)];
    if (i > 0) lo[idx(i)] = t.off[idx(i - 1)];
  }
  const double tiny = 1e-14 * (1.0 + std::abs(mu));
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(lo[idx(i + 1)]) > std::abs(dg[idx(i)])) {
      std::swap(dg[idx(i)], lo[idx(i + 1)]);
      std::swap(up[idx(i)], dg[idx(i + 1)]);
      std::swap(up2[idx(i)], up[idx(i + 1)]);
      std::swap(rhs[idx(i)], rhs[idx(i + 1)]);
    }
    if (dg[idx(i)] == 0.0) dg[idx(i)] = tiny;
    const double f = lo[idx(i + 1)] / dg[idx(i)];
    dg[idx(i + 1)] -= f * up[idx(i)];
    up[idx(i + 1)] -= f * up2[idx(i)];
    rhs[idx(i + 1)] -= f * rhs[idx(i)];
  }
  if (n > 0 && dg[idx(n - 1)] == 0.0) dg[idx(n - 1)] = tiny;
  for (int i = n - 1; i >= 0; --i) {
    double s = rhs[idx(i)];
    if (i + 1 < n) s -= up[idx(i)] * rhs[idx(i + 1)];
    if (i + 2 < n) s -= up2[idx(i)] * rhs[idx(i + 2)];
    rhs[idx(i)] = s / dg[idx(i)];
  }
  return rhs;
}

void normalize_vector(std::vector<double>& x) {
  const double norm = std::sqrt(kernels::dot(x.data(), x.data(), x.size()));
  if (norm > 0) {
    for (double& xi : x) xi /= norm;
  }
}

int require_regular(const Graph& g) {
  const auto d = g.regular_degree();
  if (!d) throw Error(ErrorCode::kNonRegular, "graph is not regular");
  return *d;
}

double hoffman_value(const Graph& g) {
  const int d = require_regular(g);
  if (d < 1) throw Error(ErrorCode::kNonRegular, "Hoffman bound needs degree >= 1");
  const double l1 = spectrum(g, MatrixKind::kAdjacency).lambda(1);
  return -static_cast<double>(g.num_vertices()) * l1 / (d - l1);
}

}  // namespace

const char* to_string(MatrixKind kind) { return kind == MatrixKind::kAdjacency ? "adjacency" : "laplacian"; }

std::vector<double> graph_matrix(const Graph& g, MatrixKind kind) {
  const int n = g.num_vertices();
  std::vector<double> a(idx(n) * idx(n), 0.0);
  for (const Edge& e : g.edges()) {
    const double w = kind == MatrixKind::kAdjacency ? 1.0 : -1.0;
    a[idx(e.u) * idx(n) + idx(e.v)] = w;
    a[idx(e.v) * idx(n) + idx(e.u)] = w;
  }
  if (kind == MatrixKind::kLaplacian) {
    for (int v = 0; v < n; ++v) a[idx(v) * idx(n) + idx(v)] = g.degree(v);
  }
  return a;
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
  if (a.size() != idx(n) * idx(n)) throw Error(ErrorCode::kSize, "matrix size does not match n");
  if (n == 0) return {};
  const Tridiagonal t = tridiagonalize(a, n, false);
  return tridiagonal_eigenvalues(t.diag, t.off);
}

Spectrum spectrum(const Graph& g, MatrixKind kind) {
  Spectrum s;
  s.kind = kind;
  s.eigenvalues = symmetric_eigenvalues(graph_matrix(g, kind), g.num_vertices());
  return s;
}

FiedlerResult fiedler_vector(const Graph& g) {
  const int n = g.num_vertices();
  if (n < 2) throw Error(ErrorCode::kSize, "Fiedler vector needs at least 2 vertices");
  std::vector<double> a = graph_matrix(g, MatrixKind::kLaplacian);
  const Tridiagonal t = tridiagonalize(a, n, true);
  const std::vector<double> evals = tridiagonal_eigenvalues(t.diag, t.off);
  FiedlerResult out;
  out.lambda2 = evals[1];

  const double shift = out.lambda2 + 1e-10 * (1.0 + std::abs(out.lambda2));
  std::vector<double> y(idx(n));
  for (int i = 0; i < n; ++i) y[idx(i)] = 1.0 + 0.5 * std::sin(1.0 + 0.7 * i);
  normalize_vector(y);
  for (int it = 0; it < 4; ++it) {
    y = solve_shifted(t, shift, std::move(y));
    normalize_vector(y);
  }
  // Back to the original basis: x = H_0 H_1 ... H_{n-3} y.
  for (int k = static_cast<int>(t.v.size()) - 1; k >= 0; --k) {
    const auto& v = t.v[idx(k)];
    if (t.beta[idx(k)] == 0.0) continue;
    const std::size_t m = v.size();
    const double proj = t.beta[idx(k)] * kernels::dot(v.data(), &y[idx(k + 1)], m);
    kernels::axpy(-proj, v.data(), &y[idx(k + 1)], m);
  }
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  for (double& yi : y) yi -= mean;
  normalize_vector(y);
  out.vector = std::move(y);
  return out;
}

double hoffman_bound(const Graph& g) { return hoffman_value(g); }

double non_bipartite_size_bound(const Graph& g) { return 2.0 * hoffman_value(g); }

MixingResult mixing_discrepancy(const Graph& g, std::span<const int> s, std::span<const int> t) {
  require_regular(g);
  return mixing_discrepancy(g, spectrum(g, MatrixKind::kAdjacency), s, t);
}

MixingResult mixing_discrepancy(const Graph& g, const Spectrum& adjacency, std::span<const int> s,
                                std::span<const int> t) {
  const int d = require_regular(g);
  const int n = g.num_vertices();
  if (adjacency.kind != MatrixKind::kAdjacency || static_cast<int>(adjacency.eigenvalues.size()) != n) {
    throw Error(ErrorCode::kMismatch, "mixing needs the adjacency spectrum of the same graph");
  }
  const std::vector<char> in_t = make_mask(n, t);
  const std::vector<char> in_s = make_mask(n, s);
  long long ordered = 0;
  for (int u = 0; u < n; ++u) {
    if (!in_s[idx(u)]) continue;
    for (int w : g.neighbors(u)) ordered += in_t[idx(w)] ? 1 : 0;
  }
  const double ss = static_cast<double>(std::count(in_s.begin(), in_s.end(), 1));
  const double tt = static_cast<double>(std::count(in_t.begin(), in_t.end(), 1));
  MixingResult r;
  r.lambda = n >= 2 ? std::max(std::abs(adjacency.lambda(1)), std::abs(adjacency.lambda(n - 1))) : 0.0;
  r.lhs = n == 0 ? 0.0 : std::abs(static_cast<double>(ordered) - d * ss * tt / n);
  r.rhs = r.lambda * std::sqrt(ss * tt);
  return r;
}

bool pm_spectral_certificate(const Graph& g) {
  const int n = g.num_vertices();
  if (n % 2 != 0) return false;
  if (n == 0) return true;
  const Spectrum s = spectrum(g, MatrixKind::kLaplacian);
  // All-zero spectra (edgeless graphs) satisfy the inequality vacuously.
  if (s.lambda(2) <= kCertificateSlack) return false;
  return s.lambda(n) <= 2.0 * s.lambda(2) + kCertificateSlack;
}

InterlacingReport interlacing_report(const Graph& g, std::span<const int> u) {
  const VertexSet set = normalized(VertexSet(u.begin(), u.end()));
  if (set.empty()) throw Error(ErrorCode::kInvalidArgument, "interlacing needs a nonempty vertex set");
  const InducedSubgraph h = induced_subgraph(g, set);
  const int n = g.num_vertices();
  const int m = h.graph.num_vertices();
  const Spectrum ag = spectrum(g, MatrixKind::kAdjacency);
  const Spectrum lh = spectrum(h.graph, MatrixKind::kLaplacian);
  const double delta = h.graph.min_degree();
  const double big_delta = h.graph.max_degree();
  InterlacingReport r;
  r.worst_slack = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= m; ++k) {
    const double lower = delta - ag.lambda(n - k + 1);
    const double upper = big_delta - ag.lambda(m - k + 1);
    const double slack = std::min(lh.lambda(k) - lower, upper - lh.lambda(k));
    r.worst_slack = std::min(r.worst_slack, slack);
    if (slack < -kCertificateSlack && r.holds) {
      r.holds = false;
      r.first_violation = k;
    }
  }
  return r;
}

bool interlacing_check(const Graph& g, std::span<const int> u) { return interlacing_report(g, u).holds; }

}  // namespace minorforge
