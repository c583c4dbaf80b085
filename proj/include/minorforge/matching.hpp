#pragma once

#include <optional>
#include <span>
#include <vector>

#include "minorforge/graph.hpp"

namespace minorforge {

/// Sorted edge ids, no two sharing a vertex.
using Matching = std::vector<int>;
using ChargeVector = std::vector<int>;
/// One bit per edge id.
using EdgeAssignment = std::vector<std::uint8_t>;

/// Maximum-cardinality matching (Edmonds' blossom algorithm). Deterministic:
/// greedy start and augmentation both scan vertices in ascending order.
Matching max_matching(const Graph& g);

/// mate[v] = matched partner or -1.
std::vector<int> max_matching_mates(const Graph& g);

bool is_matching(const Graph& g, std::span<const int> edge_ids);
bool is_perfect_matching(const Graph& g, std::span<const int> edge_ids);

/// Perfect matching of G[U] as edge ids of G, or nullopt.
std::optional<Matching> perfect_matching_of(const Graph& g, std::span<const int> vertices);

/// x with sum_{e at v} x_e = b_v for every v, or nullopt. Decided by a
/// perfect matching in a gadget graph: v becomes deg(v) edge ports plus
/// deg(v)-b_v slack vertices joined to all of its ports.
std::optional<EdgeAssignment> solve_card(const Graph& g, std::span<const int> b);

/// Throws kMismatch when b or x has the wrong length.
bool verify_assignment(const Graph& g, std::span<const int> b, std::span<const std::uint8_t> x);

}  // namespace minorforge
