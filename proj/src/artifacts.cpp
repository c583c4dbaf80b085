#include "minorforge/artifacts.hpp"

#include <cmath>

namespace minorforge {

namespace {

std::size_t idx(int v) { return static_cast<std::size_t>(v); }

Json optional_double(const std::optional<double>& x) {
  if (!x) return nullptr;
  if (std::isinf(*x)) return "inf";
  return *x;
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::kFormat, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorCode::kFormat, std::string("bad field \"") + key + "\": " + ex.what());
  }
}

int parse_index(const std::string& key, int limit, const char* what) {
  std::size_t used = 0;
  int v = -1;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || v < 0 || v >= limit) {
    throw Error(ErrorCode::kFormat, std::string("bad ") + what + " key \"" + key + "\"");
  }
  return v;
}

std::string literal_token(const Literal& l) { return (l.negated ? "~x" : "x") + std::to_string(l.var); }

}  // namespace

Json cut_to_json(const Cut& cut) {
  return Json{{"c", cut.c},   {"eps", cut.eps},           {"resamples", cut.resamples},
              {"restarts", cut.restarts}, {"s", cut.s}, {"t", cut.t}};
}

Cut cut_from_json(const Json& j) {
  Cut cut;
  cut.c = field<double>(j, "c");
  cut.eps = field<double>(j, "eps");
  cut.s = field<VertexSet>(j, "s");
  cut.t = field<VertexSet>(j, "t");
  if (j.contains("resamples")) cut.resamples = field<std::int64_t>(j, "resamples");
  if (j.contains("restarts")) cut.restarts = field<int>(j, "restarts");
  return cut;
}

Json expansion_to_json(const ExpansionReport& r) {
  Json j{{"alpha_exact", optional_double(r.alpha_exact)}, {"alpha_spectral_lower", r.alpha_spectral_lower}};
  j["witness_cut"] = r.witness_cut ? Json(*r.witness_cut) : Json(nullptr);
  j["witness_boundary"] = r.witness_boundary;
  return j;
}

Json partition_to_json(const PartitionResult& r) {
  Json j;
  j["degenerate"] = r.degenerate;
  if (r.degenerate) j["degenerate_reason"] = r.degenerate_reason;
  j["alpha"] = r.alpha;
  j["cut"] = cut_to_json(r.cut);
  j["t"] = r.t;
  j["expansion"] = {{"status", to_string(r.expansion_status)},
                    {"report", expansion_to_json(r.expansion)},
                    {"violation", r.expansion_violation ? Json(*r.expansion_violation) : Json(nullptr)}};
  j["odd_cycle"] = {{"status", to_string(r.odd_cycle_status)},
                    {"min_length", r.odd_cycle_min},
                    {"max_length", r.odd_cycle_max},
                    {"cycle", r.odd_cycle ? Json(r.odd_cycle->vertices) : Json(nullptr)}};
  j["robustness"] = {{"status", to_string(r.robustness_status)},
                     {"trials", r.robustness.trials},
                     {"sample_size", r.robustness.sample_size},
                     {"d_min", r.robustness.d_min},
                     {"min_observed_max_degree", r.robustness.min_observed_max_degree},
                     {"first_falsifying_trial", r.robustness.first_falsifying_trial},
                     {"analytic_bound", optional_double(r.robustness.analytic_bound)}};
  j["perfect_matching"] = {{"status", to_string(r.pm_status)},
                           {"trials", r.pm_trials},
                           {"successes", r.pm_successes},
                           {"failures", r.pm_failures}};
  return j;
}

Json embed_params_to_json(const EmbedParams& p) {
  return Json{{"mode", to_string(p.mode)},
              {"alpha", p.alpha},
              {"beta", p.beta},
              {"gamma", p.gamma},
              {"k", p.k},
              {"n", p.n},
              {"s", p.s},
              {"r_mult", p.r_mult},
              {"r_add", p.r_add},
              {"cross_spare", p.cross_spare},
              {"cross_s_floor", p.cross_s_floor},
              {"cross_center_spare", p.cross_center_spare},
              {"path_max_len", p.path_max_len == kInf ? Json(nullptr) : Json(p.path_max_len)},
              {"non_paper", p.non_paper}};
}

Json diagnostics_to_json(const EmbedDiagnostics& d) {
  Json j{{"failure", d.failure},         {"message", d.message},
         {"crosses", d.crosses},         {"unembeds", d.unembeds},
         {"edge_paths", d.edge_paths},   {"ledger_violations", d.ledger_violations},
         {"warnings", d.warnings},       {"hypothesis", d.hypothesis},
         {"final_a", d.final_a},         {"final_a_prime", d.final_a_prime},
         {"final_c", d.final_c}};
  if (d.post_mortem) {
    const PostMortem& pm = *d.post_mortem;
    j["post_mortem"] = {{"alpha_certified", pm.alpha_certified}, {"discarded", pm.discarded},
                        {"neighborhood", pm.neighborhood},       {"balanced", pm.balanced},
                        {"separator_bound", pm.separator_bound}, {"alarm", pm.alarm}};
  } else {
    j["post_mortem"] = nullptr;
  }
  return j;
}

Json parities_to_json(std::span<const int> parities) {
  Json j = Json::array();
  for (int p : parities) j.push_back(p == 1 ? "odd" : p == 0 ? "even" : "any");
  return j;
}

std::vector<int> parities_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::kFormat, "parities must be an array");
  std::vector<int> out;
  for (const Json& x : j) {
    if (x == "odd" || x == 1) {
      out.push_back(1);
    } else if (x == "even" || x == 0) {
      out.push_back(0);
    } else if (x == "any" || x == -1) {
      out.push_back(kAnyParity);
    } else {
      throw Error(ErrorCode::kFormat, "parity must be odd, even or any");
    }
  }
  return out;
}

Json embedding_to_json(const TopologicalEmbedding& emb, std::span<const int> parities) {
  Json sigma = Json::object();
  for (std::size_t x = 0; x < emb.sigma.size(); ++x) sigma[std::to_string(x)] = emb.sigma[x];
  Json paths = Json::object();
  for (std::size_t e = 0; e < emb.paths.size(); ++e) paths[std::to_string(e)] = emb.paths[e].vertices;
  Json par = Json::object();
  for (std::size_t e = 0; e < parities.size(); ++e) {
    par[std::to_string(e)] = parities[e] == 1 ? "odd" : parities[e] == 0 ? "even" : "any";
  }
  return Json{{"sigma", std::move(sigma)}, {"paths", std::move(paths)}, {"parities", std::move(par)}};
}

TopologicalEmbedding embedding_from_json(const Json& j, const MultiGraph& h) {
  const Json sigma = field<Json>(j, "sigma");
  const Json paths = field<Json>(j, "paths");
  if (!sigma.is_object() || !paths.is_object()) throw Error(ErrorCode::kFormat, "sigma and paths must be objects");
  TopologicalEmbedding emb;
  emb.sigma.assign(idx(h.num_vertices()), -1);
  emb.paths.resize(idx(h.num_edges()));
  std::vector<char> seen_v(idx(h.num_vertices()), 0);
  std::vector<char> seen_e(idx(h.num_edges()), 0);
  for (const auto& [key, value] : sigma.items()) {
    const int x = parse_index(key, h.num_vertices(), "sigma");
    emb.sigma[idx(x)] = value.get<int>();
    seen_v[idx(x)] = 1;
  }
  for (const auto& [key, value] : paths.items()) {
    const int e = parse_index(key, h.num_edges(), "path");
    emb.paths[idx(e)].vertices = value.get<std::vector<int>>();
    seen_e[idx(e)] = 1;
  }
  if (std::find(seen_v.begin(), seen_v.end(), 0) != seen_v.end()) {
    throw Error(ErrorCode::kFormat, "sigma misses a pattern vertex");
  }
  if (std::find(seen_e.begin(), seen_e.end(), 0) != seen_e.end()) {
    throw Error(ErrorCode::kFormat, "paths miss a pattern edge");
  }
  for (const Path& p : emb.paths) emb.achieved.push_back(p.length() % 2);
  emb.requested = embedding_parities_from_json(j, h);
  return emb;
}

std::vector<int> embedding_parities_from_json(const Json& j, const MultiGraph& h) {
  std::vector<int> out(idx(h.num_edges()), kAnyParity);
  if (!j.contains("parities")) return out;
  const Json& par = j.at("parities");
  if (!par.is_object()) throw Error(ErrorCode::kFormat, "parities must be an object");
  for (const auto& [key, value] : par.items()) {
    const int e = parse_index(key, h.num_edges(), "parity");
    out[idx(e)] = parities_from_json(Json::array({value}))[0];
  }
  return out;
}

Json restriction_to_json(const Restriction& rho) {
  Json map = Json::object();
  for (int v = 0; v < rho.num_vars; ++v) {
    const auto& image = rho.map[idx(v)];
    if (!image) continue;
    std::string s;
    switch (image->kind) {
      case ImageKind::kZero: s = "0"; break;
      case ImageKind::kOne: s = "1"; break;
      case ImageKind::kPos: s = "x" + std::to_string(image->var); break;
      case ImageKind::kNeg: s = "~x" + std::to_string(image->var); break;
    }
    map[std::to_string(v)] = s;
  }
  return Json{{"num_vars", rho.num_vars}, {"map", std::move(map)}};
}

Restriction restriction_from_json(const Json& j) {
  Restriction rho(field<int>(j, "num_vars"));
  const Json map = field<Json>(j, "map");
  if (!map.is_object()) throw Error(ErrorCode::kFormat, "restriction map must be an object");
  for (const auto& [key, value] : map.items()) {
    const int v = parse_index(key, rho.num_vars, "restriction");
    if (!value.is_string()) throw Error(ErrorCode::kFormat, "restriction image must be a string");
    const std::string s = value.get<std::string>();
    if (s == "0") {
      rho.set(v, {ImageKind::kZero, -1});
    } else if (s == "1") {
      rho.set(v, {ImageKind::kOne, -1});
    } else if (s.rfind("~x", 0) == 0) {
      rho.set(v, {ImageKind::kNeg, parse_index(s.substr(2), rho.num_vars, "image")});
    } else if (s.rfind("x", 0) == 0) {
      rho.set(v, {ImageKind::kPos, parse_index(s.substr(1), rho.num_vars, "image")});
    } else {
      throw Error(ErrorCode::kFormat, "bad restriction image \"" + s + "\"");
    }
  }
  return rho;
}

Json formula_to_json(const Formula& f) {
  Json axioms = Json::array();
  for (const Constraint& c : f.constraints) {
    Json lits = Json::array();
    for (const Literal& l : c.literals) lits.push_back(literal_token(l));
    axioms.push_back({{"origin", c.origin},
                      {"type", c.kind == ConstraintKind::kParity ? "parity" : "exactly"},
                      {"value", c.value},
                      {"literals", std::move(lits)}});
  }
  Json j{{"kind", to_string(f.kind)}, {"num_vars", f.num_vars}, {"trivially_false", f.trivially_false}};
  if (f.trivially_false) j["false_reason"] = f.false_reason;
  if (!f.out_of_range.empty()) j["out_of_range"] = f.out_of_range;
  j["axioms"] = std::move(axioms);
  return j;
}

}  // namespace minorforge
