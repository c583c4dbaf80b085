#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "minorforge/graph.hpp"

namespace minorforge {

using Json = nlohmann::ordered_json;

/// {"n": n, "edges": [[u, v], ...]} with u < v in edge-id order.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// Same shape; parallel edges allowed, order preserved (it defines edge ids).
Json multigraph_to_json(const MultiGraph& h);
MultiGraph multigraph_from_json(const Json& j);

/// `p graph n m` header then `e u v` lines, vertices 1-indexed; `c` lines
/// are comments.
std::string graph_to_text(const Graph& g);
Graph graph_from_text(std::istream& in);

/// Reads JSON or the edge-list text format, chosen by the first
/// non-blank character. Throws kFormat on malformed input.
Graph read_graph(const std::string& path);
MultiGraph read_multigraph(const std::string& path);
Json read_json(const std::string& path);

/// Writes `text` to `path`; throws kFormat if the file cannot be opened.
void write_text(const std::string& path, const std::string& text);

}  // namespace minorforge
