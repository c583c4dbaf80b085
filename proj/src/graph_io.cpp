#include "minorforge/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace minorforge {

namespace {

std::vector<Edge> edges_from_json(const Json& j, int& n) {
  if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
    throw Error(ErrorCode::kFormat, "graph JSON needs \"n\" and \"edges\"");
  }
  try {
    n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::kFormat, "edge must be a pair [u, v]");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return edges;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kFormat, std::string("bad graph JSON: ") + ex.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFormat, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && (text[pos] == '{' || text[pos] == '[');
}

}  // namespace

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return Json{{"n", g.num_vertices()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const Json& j) {
  int n = 0;
  auto edges = edges_from_json(j, n);
  return Graph::from_edges(n, std::move(edges));
}

Json multigraph_to_json(const MultiGraph& h) {
  Json edges = Json::array();
  for (const Edge& e : h.edges()) edges.push_back({e.u, e.v});
  return Json{{"n", h.num_vertices()}, {"edges", std::move(edges)}};
}

MultiGraph multigraph_from_json(const Json& j) {
  int n = 0;
  auto edges = edges_from_json(j, n);
  return MultiGraph(n, std::move(edges));
}

std::string graph_to_text(const Graph& g) {
  std::ostringstream out;
  out << "p graph " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  return out.str();
}

Graph graph_from_text(std::istream& in) {
  std::string line;
  int n = -1;
  long long m = -1;
  std::vector<Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      if (!(ls >> kind >> n >> m) || kind != "graph" || n < 0 || m < 0) {
        throw Error(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": expected 'p graph n m'");
      }
    } else if (tag == "e") {
      int u = 0;
      int v = 0;
      if (n < 0) throw Error(ErrorCode::kFormat, "edge before 'p graph' header");
      if (!(ls >> u >> v)) throw Error(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": expected 'e u v'");
      edges.push_back({u - 1, v - 1});
    } else {
      throw Error(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": unknown tag '" + tag + "'");
    }
  }
  if (n < 0) throw Error(ErrorCode::kFormat, "missing 'p graph' header");
  if (static_cast<long long>(edges.size()) != m) {
    throw Error(ErrorCode::kFormat, "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph read_graph(const std::string& path) {
  const std::string text = slurp(path);
  if (looks_like_json(text)) {
    try {
      return graph_from_json(Json::parse(text));
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::kFormat, "'" + path + "': " + ex.what());
    }
  }
  std::istringstream in(text);
  return graph_from_text(in);
}

MultiGraph read_multigraph(const std::string& path) {
  const std::string text = slurp(path);
  if (looks_like_json(text)) return multigraph_from_json(read_json(path));
  std::istringstream in(text);
  return MultiGraph::from_graph(graph_from_text(in));
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(slurp(path));
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kFormat, "'" + path + "': " + ex.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kFormat, "cannot write '" + path + "'");
  out << text;
}

}  // namespace minorforge
