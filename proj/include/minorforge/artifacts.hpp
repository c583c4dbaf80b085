#pragma once

#include <span>
#include <vector>

#include "minorforge/embedding.hpp"
#include "minorforge/formulas.hpp"
#include "minorforge/graph_io.hpp"
#include "minorforge/partition.hpp"

namespace minorforge {

Json cut_to_json(const Cut& cut);
Cut cut_from_json(const Json& j);

Json expansion_to_json(const ExpansionReport& r);
Json partition_to_json(const PartitionResult& r);

Json embed_params_to_json(const EmbedParams& p);
Json diagnostics_to_json(const EmbedDiagnostics& d);

/// Per-edge parities as 0, 1 or kAnyParity; "odd", "even", "any" in JSON.
Json parities_to_json(std::span<const int> parities);
std::vector<int> parities_from_json(const Json& j);

/// {"sigma": {"x": v}, "paths": {"e": [...]}, "parities": {"e": "odd"}}
/// keyed by pattern vertex and edge ids.
Json embedding_to_json(const TopologicalEmbedding& emb, std::span<const int> parities);
TopologicalEmbedding embedding_from_json(const Json& j, const MultiGraph& h);
std::vector<int> embedding_parities_from_json(const Json& j, const MultiGraph& h);

/// {"num_vars": m, "map": {"e": "0" | "1" | "x<f>" | "~x<f>"}}
Json restriction_to_json(const Restriction& rho);
Restriction restriction_from_json(const Json& j);

Json formula_to_json(const Formula& f);

}  // namespace minorforge
