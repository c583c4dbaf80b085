#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minorforge/graph.hpp"
#include "minorforge/rng.hpp"

namespace minorforge {

struct RegularOptions {
  /// Restarts of the pairing process before giving up.
  std::int64_t max_attempts = 1'000'000;
};

/// Random simple d-regular graph on n vertices from the pairing
/// (configuration) model. Small degrees use whole-pairing rejection, which
/// is exactly uniform; larger degrees reject individual bad pairs as they
/// are drawn and restart only when stuck (Steger-Wormald), since whole
/// rejection succeeds with probability about exp(-(d*d-1)/4).
/// Throws kParity when n*d is odd, kInvalidArgument when d >= n (d > 0),
/// kTimeout after `max_attempts` restarts.
Graph generate_random_regular(int n, int d, Rng& rng, const RegularOptions& options = {});

/// Largest degree for which whole-pairing rejection is used.
inline constexpr int kExactPairingMaxDegree = 4;

struct OplusSample {
  Graph graph;
  /// Edge ids of `graph` belonging to each layer; layers partition the edges.
  std::vector<std::vector<int>> layers;
  std::vector<int> layer_degrees;
  std::int64_t attempts = 0;
};

/// Union of independent random regular graphs with the given degrees,
/// jointly resampled until the union is simple.
OplusSample oplus_sample(int n, const std::vector<int>& degrees, Rng& rng,
                         std::int64_t max_attempts = 1'000'000);

namespace families {

Graph complete(int n);
Graph cycle(int n);
Graph path(int n);
Graph star(int leaves);
Graph petersen();
Graph hypercube(int dim);
/// C_n(jumps): i ~ i +- j (mod n) for each jump j.
Graph circulant(int n, const std::vector<int>& jumps);
Graph complete_bipartite(int a, int b);
/// Two triangles {0,1,2}, {3,4,5} joined by the bridge 2-3.
Graph two_triangles_bridge();

/// Named pattern graphs for the CLI: edge, triangle, k4, petersen, cube,
/// cycle:N, complete:N, path:N, star:N, circulant:N:a,b,...
MultiGraph by_name(const std::string& name);

}  // namespace families

}  // namespace minorforge
