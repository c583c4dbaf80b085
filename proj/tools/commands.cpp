#include "commands.hpp"

#include <algorithm>
#include <sstream>

#include "minorforge/artifacts.hpp"
#include "minorforge/expansion.hpp"
#include "minorforge/generators.hpp"
#include "minorforge/matching.hpp"
#include "minorforge/spectral.hpp"
#include "minorforge/traversal.hpp"

namespace minorforge::cli {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

template <class T>
T get(const Json& config, const char* key) {
  if (!config.contains(key)) throw Error(ErrorCode::kInvalidArgument, std::string("config lacks \"") + key + "\"");
  try {
    return config.at(key).get<T>();
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad config value \"") + key + "\": " + ex.what());
  }
}

template <class T>
std::optional<T> get_optional(const Json& config, const char* key) {
  if (!config.contains(key) || config.at(key).is_null()) return std::nullopt;
  return get<T>(config, key);
}

std::uint64_t seed_of(const Json& config) { return get<std::uint64_t>(config, "seed"); }

Json artifact(const char* kind, const Json& config) { return Json{{"artifact", kind}, {"config", config}}; }

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

OplusSample layered_graph(const Json& j) {
  OplusSample s;
  s.graph = graph_from_json(j);
  if (!j.contains("layers")) throw Error(ErrorCode::kFormat, "graph artifact has no layers; generate it with --layers");
  s.layers = j.at("layers").get<std::vector<std::vector<int>>>();
  s.layer_degrees = j.at("layer_degrees").get<std::vector<int>>();
  return s;
}

RunResult run_gen(const Json& config) {
  Rng rng(seed_of(config));
  Json out = artifact("graph", config);
  Graph g;
  if (const auto family = get_optional<std::string>(config, "family")) {
    const MultiGraph h = families::by_name(*family);
    g = Graph::from_edges(h.num_vertices(), std::vector<Edge>(h.edges().begin(), h.edges().end()));
  } else {
    const int n = get<int>(config, "n");
    const auto layers = get_optional<std::vector<int>>(config, "layers");
    if (layers && !layers->empty()) {
      OplusSample s = oplus_sample(n, *layers, rng);
      g = s.graph;
      const Json body = graph_to_json(g);
      out["n"] = body["n"];
      out["edges"] = body["edges"];
      out["layers"] = s.layers;
      out["layer_degrees"] = s.layer_degrees;
      return {dump(out), "graph n=" + std::to_string(n) + " m=" + std::to_string(g.num_edges()) + " layers=" +
                             std::to_string(s.layers.size()),
              kOk};
    }
    g = generate_random_regular(n, get<int>(config, "d"), rng);
  }
  const Json body = graph_to_json(g);
  out["n"] = body["n"];
  out["edges"] = body["edges"];
  return {dump(out), "graph n=" + std::to_string(g.num_vertices()) + " m=" + std::to_string(g.num_edges()), kOk};
}

RunResult run_analyze(const Json& config) {
  const Graph g = read_graph(get<std::string>(config, "graph"));
  Json out = artifact("analysis", config);
  const int n = g.num_vertices();
  const auto d = g.regular_degree();
  out["n"] = n;
  out["m"] = g.num_edges();
  out["regular_degree"] = d ? Json(*d) : Json(nullptr);
  out["min_degree"] = g.min_degree();
  out["max_degree"] = g.max_degree();
  out["components"] = components(g).size();
  const int diam = diameter(g);
  out["diameter"] = diam == kInf ? Json(nullptr) : Json(diam);
  std::string summary = "n=" + std::to_string(n) + " m=" + std::to_string(g.num_edges());
  if (n >= 2) {
    const Spectrum adj = spectrum(g, MatrixKind::kAdjacency);
    const Spectrum lap = spectrum(g, MatrixKind::kLaplacian);
    out["adjacency"] = {{"largest", adj.lambda(n)}, {"second", adj.lambda(n - 1)}, {"smallest", adj.lambda(1)}};
    out["laplacian"] = {{"lambda2", lap.lambda(2)}, {"largest", lap.lambda(n)}};
    const double alpha = spectral_expansion_lower(g);
    out["alpha_spectral_lower"] = alpha;
    summary += " alpha>=" + fmt(alpha);
    if (n <= exact_limit()) {
      const ExpansionReport exact = vertex_expansion_exact(g);
      out["alpha_exact"] = expansion_to_json(exact)["alpha_exact"];
      out["alpha_witness"] = exact.witness_cut ? Json(*exact.witness_cut) : Json(nullptr);
    }
    if (d) out["hoffman_bound"] = hoffman_bound(g);
    out["pm_spectral_certificate"] = pm_spectral_certificate(g);
  }
  out["max_matching"] = max_matching(g).size();
  const int odd = [&] {
    const auto c = shortest_odd_cycle(g, 3, n);
    return c ? c->length() : 0;
  }();
  out["odd_girth"] = odd ? Json(odd) : Json(nullptr);
  if (diam != kInf) summary += " diameter=" + std::to_string(diam);
  return {dump(out), summary, kOk};
}

RunResult run_cut(const Json& config) {
  const Graph g = read_graph(get<std::string>(config, "graph"));
  Rng rng(seed_of(config));
  const Cut cut = degree_balanced_cut(g, get<double>(config, "c"), get<double>(config, "eps"), rng,
                                      get_optional<std::int64_t>(config, "max_resamples").value_or(0));
  const bool ok = verify_cut(g, cut);
  Json out = artifact("cut", config);
  out.update(cut_to_json(cut));
  out["verified"] = ok;
  return {dump(out),
          "cut |S|=" + std::to_string(cut.s.size()) + " |T|=" + std::to_string(cut.t.size()) +
              " resamples=" + std::to_string(cut.resamples) + (ok ? " verified" : " NOT verified"),
          ok ? kOk : kConstructiveFailure};
}

RunResult run_partition(const Json& config, int jobs) {
  const Graph g = read_graph(get<std::string>(config, "graph"));
  Rng rng(seed_of(config));
  PartitionConfig pc;
  pc.c = get<double>(config, "c");
  pc.eps = get<double>(config, "eps");
  pc.kappa = get<double>(config, "kappa");
  pc.ell = get<int>(config, "ell");
  pc.probe_trials = get<int>(config, "probe_trials");
  pc.pm_trials = get<int>(config, "pm_trials");
  pc.max_resamples = get_optional<std::int64_t>(config, "max_resamples").value_or(0);
  pc.jobs = jobs;
  const PartitionResult r = partition_pipeline(g, rng, pc);
  Json out = artifact("partition", config);
  out.update(partition_to_json(r));
  const bool falsified = r.expansion_status == DiagnosticStatus::kFalsified ||
                         r.odd_cycle_status == DiagnosticStatus::kFalsified ||
                         r.robustness_status == DiagnosticStatus::kFalsified ||
                         r.pm_status == DiagnosticStatus::kFalsified;
  std::string summary = "partition |T|=" + std::to_string(r.t.size()) + " expansion=" +
                        to_string(r.expansion_status) + " odd-cycle=" + to_string(r.odd_cycle_status) +
                        " robustness=" + to_string(r.robustness_status) + " pm=" + to_string(r.pm_status);
  if (r.degenerate) summary += " (degenerate: " + r.degenerate_reason + ")";
  return {dump(out), summary, falsified ? kConstructiveFailure : kOk};
}

struct Host {
  Graph g;
  /// The graph the construction runs in (G or G[T]).
  InducedSubgraph sub;
  bool restricted = false;
};

Host load_host(const Json& config) {
  Host host;
  host.g = read_graph(get<std::string>(config, "host"));
  if (const auto part = get_optional<std::string>(config, "partition")) {
    const Json p = read_json(*part);
    const VertexSet t = p.at("t").get<VertexSet>();
    host.sub = induced_subgraph(host.g, t);
    host.restricted = true;
  } else {
    host.sub = induced_subgraph(host.g, all_vertices(host.g.num_vertices()));
  }
  return host;
}

RunResult run_embed(const Json& config) {
  const Host host = load_host(config);
  const Graph& g = host.sub.graph;
  const MultiGraph h = multigraph_from_json(get<Json>(config, "pattern"));
  const std::vector<int> parities = parities_from_json(get<Json>(config, "parities"));
  if (static_cast<int>(parities.size()) != h.num_edges()) {
    throw Error(ErrorCode::kInvalidArgument, "one parity per pattern edge expected");
  }
  const auto given_alpha = get_optional<double>(config, "alpha");
  const double alpha = given_alpha ? *given_alpha : spectral_expansion_lower(g);
  const EmbedMode mode = get<std::string>(config, "mode") == "paper" ? EmbedMode::kPaper : EmbedMode::kEngineering;
  EmbedParams params = embed_parameters(alpha, g.num_vertices(), mode, get<double>(config, "sigma"),
                                        get<double>(config, "rho"));
  params.k = get<int>(config, "k");
  EmbedOptions options;
  options.max_iterations = get_optional<int>(config, "max_iterations").value_or(0);
  Rng rng(seed_of(config));
  const EmbedOutcome outcome = embed_graph(h, g, params, parities, rng, options);

  Json out = artifact("embedding", config);
  out["seed"] = seed_of(config);
  out["mode"] = to_string(mode);
  out["alpha_source"] = given_alpha ? "given" : "spectral";
  out["params"] = embed_params_to_json(params);
  out["pattern"] = multigraph_to_json(h);
  if (!outcome.embedding) {
    out["sigma"] = nullptr;
    out["paths"] = nullptr;
    out["diagnostics"] = diagnostics_to_json(outcome.diagnostics);
    return {dump(out), "embedding failed: " + outcome.diagnostics.failure + " (" + outcome.diagnostics.message + ")",
            kConstructiveFailure};
  }
  TopologicalEmbedding emb = *outcome.embedding;
  for (int& v : emb.sigma) v = host.sub.to_parent[idx(v)];
  for (Path& p : emb.paths) {
    for (int& v : p.vertices) v = host.sub.to_parent[idx(v)];
  }
  const VerifyReport check = verify_embedding(h, host.g, emb, parities);
  out.update(embedding_to_json(emb, parities));
  out["diagnostics"] = diagnostics_to_json(outcome.diagnostics);
  out["verified"] = check.ok;
  int internal = 0;
  for (const Path& p : emb.paths) internal += std::max(0, p.length() - 1);
  return {dump(out),
          "embedded " + std::to_string(h.num_vertices()) + " vertices, " + std::to_string(h.num_edges()) +
              " paths, " + std::to_string(internal) + " internal vertices" +
              (check.ok ? ", verified" : ", verifier REJECTED"),
          check.ok ? kOk : kConstructiveFailure};
}

RunResult run_lift(const Json& config) {
  const Graph g = read_graph(get<std::string>(config, "graph"));
  const Lift lift = lift_tseitin_to_pm(g);
  Json out = artifact("lift", config);
  const Json body = graph_to_json(lift.graph);
  out["n"] = body["n"];
  out["edges"] = body["edges"];
  out["d"] = lift.d;
  Json prov = Json::array();
  for (const LiftProvenance& p : lift.provenance) {
    prov.push_back({p.kind == LiftEdgeKind::kClique ? "clique" : "lifted", p.source});
  }
  out["provenance"] = std::move(prov);
  return {dump(out),
          "lift n=" + std::to_string(lift.graph.num_vertices()) + " m=" + std::to_string(lift.graph.num_edges()), kOk};
}

RunResult restrict_embedding(const Json& config, const Graph& g) {
  const Json art = read_json(get<std::string>(config, "embedding"));
  if (!art.contains("pattern")) throw Error(ErrorCode::kFormat, "embedding artifact lacks its pattern");
  if (art.value("sigma", Json()).is_null()) throw Error(ErrorCode::kFormat, "embedding artifact records a failure");
  const MultiGraph h = multigraph_from_json(art.at("pattern"));
  const TopologicalEmbedding emb = embedding_from_json(art, h);
  const Graph hg = Graph::from_edges(h.num_vertices(), std::vector<Edge>(h.edges().begin(), h.edges().end()));

  VertexSet used;
  for (const Path& p : emb.paths) used.insert(used.end(), p.vertices.begin(), p.vertices.end());
  used.insert(used.end(), emb.sigma.begin(), emb.sigma.end());
  normalize(used);
  const VertexSet rest = set_difference(all_vertices(g.num_vertices()), used);
  Json out = artifact("restriction", config);
  out["kind"] = "pm-embedding";
  const auto m = perfect_matching_of(g, rest);
  if (!m) {
    out["failure"] = "no perfect matching on the " + std::to_string(rest.size()) + " vertices off the embedding";
    return {dump(out), out["failure"].get<std::string>(), kConstructiveFailure};
  }
  const Restriction rho = restriction_from_embedding(g, emb, *m);
  const Formula residual = apply_restriction(build_formula(FormulaKind::kPM, g), rho);
  const Formula target = build_formula(FormulaKind::kPM, hg);
  std::vector<int> renaming(idx(g.num_edges()), -1);
  Json renaming_json = Json::object();
  for (int e = 0; e < h.num_edges(); ++e) {
    const Path& p = emb.paths[idx(e)];
    const int rep = *g.edge_id(p.vertices[0], p.vertices[1]);
    renaming[idx(rep)] = *hg.edge_id(h.edge(e).u, h.edge(e).v);
    renaming_json[std::to_string(rep)] = renaming[idx(rep)];
  }
  const bool syntactic = formulas_equivalent(residual, target, EquivalenceMode::kSyntactic, renaming).equivalent;
  Json semantic = nullptr;
  if (used_variables(residual).size() <= 20 && hg.num_edges() <= 20) {
    semantic = formulas_equivalent(residual, target, EquivalenceMode::kSemantic, renaming).equivalent;
  }
  out["matching"] = *m;
  out["restriction"] = restriction_to_json(rho);
  out["complement_first"] = false;
  out["renaming"] = std::move(renaming_json);
  out["residual"] = formula_to_json(residual);
  out["check"] = {{"target", "pm-pattern"}, {"syntactic", syntactic}, {"semantic", semantic}};
  const bool ok = syntactic && (semantic.is_null() || semantic.get<bool>());
  return {dump(out),
          std::string("restriction fixes ") + std::to_string(rho.assigned()) + " variables; residual " +
              (ok ? "matches" : "DIFFERS FROM") + " PM(pattern)",
          ok ? kOk : kConstructiveFailure};
}

RunResult restrict_card(const Json& config, const Json& host_json) {
  const OplusSample sample = layered_graph(host_json);
  const int t = get<int>(config, "t");
  const CardReduction red = card_to_pm_restriction(sample, t);
  const Graph& g = sample.graph;
  Formula f = build_formula(FormulaKind::kCard, g, std::vector<int>(idx(g.num_vertices()), t));
  if (red.flipped) f = complement(f);
  const Formula residual = apply_restriction(f, red.rho);
  const bool syntactic =
      formulas_equivalent(residual, build_formula(FormulaKind::kPM, red.g0), EquivalenceMode::kSyntactic, red.renaming)
          .equivalent;
  // Degree audit on the layers.
  bool audit = true;
  for (std::size_t i = 0; i < sample.layers.size(); ++i) {
    std::vector<int> deg(idx(g.num_vertices()), 0);
    for (int e : sample.layers[i]) {
      ++deg[idx(g.edge(e).u)];
      ++deg[idx(g.edge(e).v)];
    }
    audit &= std::all_of(deg.begin(), deg.end(), [&](int x) { return x == sample.layer_degrees[i]; });
  }
  Json out = artifact("restriction", config);
  out["kind"] = "card-layers";
  out["flipped"] = red.flipped;
  out["effective_t"] = red.effective_t;
  out["restriction"] = restriction_to_json(red.rho);
  out["complement_first"] = red.flipped;
  const Json g0 = graph_to_json(red.g0);
  out["g0"] = g0;
  out["residual"] = formula_to_json(residual);
  out["check"] = {{"target", "pm-layer0"}, {"syntactic", syntactic}, {"degree_audit", audit}};
  const bool ok = syntactic && audit;
  return {dump(out),
          "restriction fixes " + std::to_string(red.rho.assigned()) + " variables to 1; residual " +
              (ok ? "equals" : "DIFFERS FROM") + " PM(G0), G0 " + std::to_string(*red.g0.regular_degree()) +
              "-regular",
          ok ? kOk : kConstructiveFailure};
}

RunResult run_restrict(const Json& config) {
  const std::string host_path = get<std::string>(config, "host");
  if (get_optional<int>(config, "t")) return restrict_card(config, read_json(host_path));
  return restrict_embedding(config, read_graph(host_path));
}

FormulaKind formula_kind(const std::string& s) {
  if (s == "pm") return FormulaKind::kPM;
  if (s == "card") return FormulaKind::kCard;
  if (s == "tseitin") return FormulaKind::kTseitin;
  throw Error(ErrorCode::kInvalidArgument, "formula kind must be pm, card or tseitin");
}

RunResult run_emit(const Json& config) {
  const Graph g = read_graph(get<std::string>(config, "graph"));
  const FormulaKind kind = formula_kind(get<std::string>(config, "kind"));
  const std::vector<int> params =
      kind == FormulaKind::kPM ? std::vector<int>{}
                               : std::vector<int>(idx(g.num_vertices()), get<int>(config, "value"));
  Formula f = build_formula(kind, g, params);
  if (const auto path = get_optional<std::string>(config, "restriction")) {
    const Json art = read_json(*path);
    if (art.value("complement_first", false)) f = complement(f);
    f = apply_restriction(f, restriction_from_json(art.at("restriction")));
  }
  const std::string format = get<std::string>(config, "format");
  std::string summary = std::string(to_string(kind)) + " formula, " + std::to_string(f.constraints.size()) + " axioms";
  if (f.trivially_false) summary += ", trivially false";
  if (format == "dimacs") {
    const CnfFormula cnf = to_cnf(f, get<int>(config, "degree_cap"));
    const std::string comments[] = {"minorforge emit", "config " + config.dump()};
    return {to_dimacs(cnf, comments), summary + ", " + std::to_string(cnf.clauses.size()) + " clauses", kOk};
  }
  if (format == "poly") return {"# config " + config.dump() + "\n" + to_polynomials(f), summary, kOk};
  throw Error(ErrorCode::kInvalidArgument, "format must be dimacs or poly");
}

RunResult run_verify(const Json& config) {
  Json out = artifact("verification", config);
  std::vector<std::string> violations;
  if (const auto cut_path = get_optional<std::string>(config, "cut")) {
    const Graph g = read_graph(get<std::string>(config, "host"));
    if (!verify_cut(g, cut_from_json(read_json(*cut_path)))) violations.push_back("cut fails its windows");
  } else {
    const Graph g = read_graph(get<std::string>(config, "host"));
    const Json art = read_json(get<std::string>(config, "embedding"));
    const auto pattern = get_optional<std::string>(config, "pattern");
    const MultiGraph h = pattern ? read_multigraph(*pattern) : multigraph_from_json(art.at("pattern"));
    if (art.value("sigma", Json()).is_null()) {
      violations.push_back("artifact holds no embedding");
    } else {
      const TopologicalEmbedding emb = embedding_from_json(art, h);
      violations = verify_embedding(h, g, emb, emb.requested).violations;
    }
  }
  out["ok"] = violations.empty();
  out["violations"] = violations;
  std::string summary = violations.empty() ? "verified" : "REJECTED: " + violations.front();
  if (violations.size() > 1) summary += " (+" + std::to_string(violations.size() - 1) + " more)";
  return {dump(out), summary, violations.empty() ? kOk : kConstructiveFailure};
}

bool constructive(ErrorCode code) {
  return code == ErrorCode::kBudget || code == ErrorCode::kTimeout || code == ErrorCode::kNoCenter ||
         code == ErrorCode::kInvariant;
}

}  // namespace

RunResult execute(const Json& config, int jobs) {
  const std::string command = get<std::string>(config, "command");
  try {
    if (command == "gen") return run_gen(config);
    if (command == "analyze") return run_analyze(config);
    if (command == "cut") return run_cut(config);
    if (command == "partition") return run_partition(config, jobs);
    if (command == "embed") return run_embed(config);
    if (command == "lift") return run_lift(config);
    if (command == "restrict") return run_restrict(config);
    if (command == "emit") return run_emit(config);
    if (command == "verify") return run_verify(config);
  } catch (const Error& e) {
    if (!constructive(e.code())) throw;
    Json out = artifact(command.c_str(), config);
    out["failure"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    return {dump(out), command + " failed: " + e.what(), kConstructiveFailure};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown command \"" + command + "\"");
}

Json config_of_artifact(const std::string& text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::kFormat, std::string("bad artifact JSON: ") + ex.what());
    }
    if (!j.contains("config")) throw Error(ErrorCode::kFormat, "artifact has no embedded config");
    return j.at("config");
  }
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    for (const std::string prefix : {"c config ", "# config "}) {
      if (line.rfind(prefix, 0) == 0) {
        try {
          return Json::parse(line.substr(prefix.size()));
        } catch (const nlohmann::json::exception& ex) {
          throw Error(ErrorCode::kFormat, std::string("bad config line: ") + ex.what());
        }
      }
    }
  }
  throw Error(ErrorCode::kFormat, "artifact has no embedded config");
}

}  // namespace minorforge::cli
