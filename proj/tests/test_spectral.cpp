#include <doctest.h>

#include <cmath>
#include <numeric>

#include "minorforge/generators.hpp"
#include "minorforge/kernels.hpp"
#include "minorforge/matching.hpp"
#include "minorforge/spectral.hpp"
#include "oracles.hpp"

using namespace minorforge;

namespace {


bool near(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("spectra of small graphs") {
  const auto k4 = spectrum(families::complete(4), MatrixKind::kAdjacency).eigenvalues;
  for (int i = 0; i < 3; ++i) CHECK(near(k4[static_cast<std::size_t>(i)], -1));
  CHECK(near(k4[3], 3));
  const auto c4 = spectrum(families::cycle(4), MatrixKind::kLaplacian).eigenvalues;
  const double want[] = {0, 2, 2, 4};
  for (int i = 0; i < 4; ++i) CHECK(near(c4[static_cast<std::size_t>(i)], want[i]));
  const auto one = spectrum(Graph(1), MatrixKind::kLaplacian).eigenvalues;
  REQUIRE(one.size() == 1);
  CHECK(near(one[0], 0));
}

TEST_CASE("eigenvalues match the Jacobi reference and the trace") {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(30));
    const Graph g = oracle::random_gnp(n, rng.uniform(), rng);
    for (bool lap : {false, true}) {
      const auto kind = lap ? MatrixKind::kLaplacian : MatrixKind::kAdjacency;
      const auto got = spectrum(g, kind).eigenvalues;
      const auto want = oracle::jacobi_eigenvalues(oracle::adjacency_matrix(g, lap), n);
      for (int i = 0; i < n; ++i) CHECK(near(got[static_cast<std::size_t>(i)], want[static_cast<std::size_t>(i)], 1e-9));
      const double trace = lap ? 2.0 * g.num_edges() : 0.0;
      CHECK(std::abs(std::accumulate(got.begin(), got.end(), 0.0) - trace) <= 1e-8 * n);
      if (lap) CHECK(std::abs(got[0]) <= 1e-9);
    }
  }
}

TEST_CASE("eigenvalues agree across kernel backends") {
  Rng rng(5);
  const Graph g = generate_random_regular(120, 7, rng);
  kernels::force_backend(kernels::Backend::kScalar);
  const auto ref = spectrum(g, MatrixKind::kLaplacian).eigenvalues;
  for (auto b : {kernels::Backend::kAvx2, kernels::Backend::kNeon}) {
    if (!kernels::backend_available(b)) continue;
    kernels::force_backend(b);
    const auto got = spectrum(g, MatrixKind::kLaplacian).eigenvalues;
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(near(got[i], ref[i], 1e-9));
  }
  kernels::reset_backend();
}

TEST_CASE("Fiedler vector is an eigenvector") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = generate_random_regular(40, 3 + static_cast<int>(rng.below(4)) * 2 - (trial % 2), rng);
    const FiedlerResult f = fiedler_vector(g);
    const auto lap = oracle::adjacency_matrix(g, true);
    const int n = g.num_vertices();
    double residual = 0;
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += lap[static_cast<std::size_t>(i * n + j)] * f.vector[static_cast<std::size_t>(j)];
      residual = std::max(residual, std::abs(s - f.lambda2 * f.vector[static_cast<std::size_t>(i)]));
    }
    CHECK(residual < 1e-6);
    CHECK(std::abs(std::accumulate(f.vector.begin(), f.vector.end(), 0.0)) < 1e-9);
  }
}

TEST_CASE("Hoffman and non-bipartite thresholds") {
  CHECK(near(hoffman_bound(families::complete(4)), 1.0));
  CHECK(near(hoffman_bound(families::cycle(5)), std::sqrt(5.0), 1e-9));
  CHECK(near(hoffman_bound(families::cycle(4)), 2.0));
  CHECK(near(non_bipartite_size_bound(families::cycle(4)), 4.0));
  CHECK(near(non_bipartite_size_bound(families::complete(4)), 2.0));
  CHECK(non_bipartite_size_bound(families::cycle(5)) == doctest::Approx(4.4721).epsilon(1e-4));
  try {
    hoffman_bound(families::path(4));
    FAIL("expected non-regular error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonRegular);
  }
}

TEST_CASE("Hoffman bound dominates the independence number") {
  Rng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 4 + static_cast<int>(rng.below(11));
    int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (n * d % 2) --d;
    if (d < 1) d = 2;
    const Graph g = generate_random_regular(n, d, rng);
    CHECK(oracle::independence_number(g) <= hoffman_bound(g) + 1e-9);
  }
}

TEST_CASE("mixing discrepancy") {
  const MixingResult k4 = mixing_discrepancy(families::complete(4), std::vector<int>{0, 1}, std::vector<int>{2, 3});
  CHECK(near(k4.lhs, 1.0));
  CHECK(near(k4.rhs, 2.0));
  const MixingResult empty = mixing_discrepancy(families::complete(4), std::vector<int>{}, std::vector<int>{2});
  CHECK(near(empty.lhs, 0.0));
  CHECK(near(empty.rhs, 0.0));
  const MixingResult c4 = mixing_discrepancy(families::cycle(4), std::vector<int>{0}, std::vector<int>{2});
  CHECK(near(c4.lhs, 0.5));
  CHECK(near(c4.rhs, 2.0));
  // Overlapping sets: ordered counting keeps the inequality true.
  const MixingResult full = mixing_discrepancy(families::complete(4), all_vertices(4), all_vertices(4));
  CHECK(full.lhs <= full.rhs + 1e-9);
}

TEST_CASE("perfect matching certificate") {
  CHECK(pm_spectral_certificate(families::cycle(4)));
  CHECK_FALSE(pm_spectral_certificate(families::path(4)));
  CHECK(oracle::has_perfect_matching(families::path(4)));
  CHECK_FALSE(pm_spectral_certificate(families::complete(3)));

  Rng rng(77);
  int positives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng.below(8)));
    const Graph g = oracle::random_gnp(n, 0.3 + 0.6 * rng.uniform(), rng);
    if (!pm_spectral_certificate(g)) continue;
    ++positives;
    CHECK(is_perfect_matching(g, max_matching(g)));
  }
  CHECK(positives > 0);
}

TEST_CASE("interlacing bounds") {
  CHECK(interlacing_check(families::complete(4), std::vector<int>{0, 1, 2}));
  CHECK(interlacing_check(families::petersen(), all_vertices(10)));
  CHECK(interlacing_check(families::cycle(6), std::vector<int>{0, 2, 4}));
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(20));
    const Graph g = oracle::random_gnp(n, rng.uniform(), rng);
    std::vector<int> u;
    for (int v = 0; v < n; ++v) {
      if (rng.bernoulli(0.6)) u.push_back(v);
    }
    if (u.empty()) u.push_back(0);
    const InterlacingReport r = interlacing_report(g, u);
    CHECK(r.holds);
  }
}
