#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "minorforge/artifacts.hpp"
#include "minorforge/generators.hpp"

using namespace minorforge;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFormat, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json pattern_json(const std::string& spec) {
  if (std::filesystem::exists(spec)) return multigraph_to_json(read_multigraph(spec));
  return multigraph_to_json(families::by_name(spec));
}

std::vector<int> parities_for(const std::string& spec, int edges) {
  if (spec == "odd") return std::vector<int>(static_cast<std::size_t>(edges), 1);
  if (spec == "even") return std::vector<int>(static_cast<std::size_t>(edges), 0);
  if (spec == "any") return std::vector<int>(static_cast<std::size_t>(edges), kAnyParity);
  return parities_from_json(read_json(spec));
}

Json optional_value(const CLI::Option* opt, double value) { return opt->count() ? Json(value) : Json(nullptr); }

Json optional_path(const std::string& s) { return s.empty() ? Json(nullptr) : Json(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minorforge: random regular expanders, degree-balanced cuts, parity-controlled topological minors "
               "and their PM / Card / Tseitin formulas"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  std::string out_path;
  int jobs = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed")->capture_default_str();
    sub->add_option("-o,--output", out_path, "artifact file (stdout when omitted)");
  };

  int n = 0, d = 0;
  std::string family;
  std::vector<int> layers;
  auto* gen = app.add_subcommand("gen", "random d-regular graph, layered union or named family");
  gen->add_option("-n", n, "vertices");
  gen->add_option("-d", d, "degree");
  gen->add_option("--layers", layers, "layer degrees of a union of random regular graphs")->delimiter(',');
  gen->add_option("--family", family, "named family: petersen, cube, cycle:N, circulant:N:a,b, ...");
  add_common(gen);

  std::string graph;
  auto* analyze = app.add_subcommand("analyze", "degrees, spectrum, expansion bounds, matching");
  analyze->add_option("graph", graph, "graph file")->required();
  add_common(analyze);

  double c = 0.75, eps = 1.0 / 16, kappa = 1.0 / 16;
  std::int64_t max_resamples = 0;
  auto* cut = app.add_subcommand("cut", "(c, eps)-degree-balanced cut");
  cut->add_option("graph", graph, "graph file")->required();
  cut->add_option("--c", c, "target fraction in S")->capture_default_str();
  cut->add_option("--eps", eps, "window half-width")->capture_default_str();
  cut->add_option("--max-resamples", max_resamples, "resampling budget (0: 1e5 n)");
  add_common(cut);

  int ell = 7, probe_trials = 50, pm_trials = 50;
  auto* partition = app.add_subcommand("partition", "cut plus expansion / odd cycle / robustness / matching checks");
  partition->add_option("graph", graph, "regular graph file")->required();
  partition->add_option("--c", c, "target fraction in S")->capture_default_str();
  partition->add_option("--eps", eps, "window half-width")->capture_default_str();
  partition->add_option("--kappa", kappa, "robustness sample fraction")->capture_default_str();
  partition->add_option("--ell", ell, "shortest odd cycle length sought")->capture_default_str();
  partition->add_option("--probe-trials", probe_trials)->capture_default_str();
  partition->add_option("--pm-trials", pm_trials)->capture_default_str();
  partition->add_option("--max-resamples", max_resamples, "resampling budget (0: 1e5 n)");
  partition->add_option("--jobs", jobs, "threads for independent trials")->capture_default_str();
  add_common(partition);

  std::string host, partition_path, pattern, mode = "engineering", parity = "odd";
  double alpha = 0, sigma = 2.0, rho = 3.0;
  int k = 6, max_iterations = 0;
  auto* embed = app.add_subcommand("embed", "embed a pattern as a topological minor with path parities");
  embed->add_option("--host", host, "host graph file")->required();
  embed->add_option("--pattern", pattern, "pattern graph file or family name")->required();
  embed->add_option("--partition", partition_path, "partition artifact; embed inside G[T]");
  embed->add_option("--mode", mode, "paper or engineering")
      ->check(CLI::IsMember({"paper", "engineering"}))
      ->capture_default_str();
  auto* alpha_opt = embed->add_option("--alpha", alpha, "expansion parameter (default: spectral lower bound)");
  embed->add_option("--k", k, "budget divisor")->capture_default_str();
  embed->add_option("--sigma", sigma, "engineering: s = ceil(sigma log n)")->capture_default_str();
  embed->add_option("--rho", rho, "engineering: r(d) = ceil(rho d)")->capture_default_str();
  embed->add_option("--parity", parity, "odd, even, any, or a JSON file with one entry per edge")
      ->capture_default_str();
  embed->add_option("--max-iterations", max_iterations, "outer iteration cap (0: default)");
  add_common(embed);

  auto* lift = app.add_subcommand("lift", "clique lift of a regular graph");
  lift->add_option("graph", graph, "regular graph file")->required();
  add_common(lift);

  std::string embedding;
  int t = 0;
  auto* restrict = app.add_subcommand("restrict", "restriction from an embedding, or Card to PM on layers");
  restrict->add_option("--host", host, "host graph (layered gen artifact with --t)")->required();
  auto* emb_opt = restrict->add_option("--embedding", embedding, "embedding artifact");
  auto* t_opt = restrict->add_option("--t", t, "odd Card value; uses the host's layers");
  emb_opt->excludes(t_opt);
  add_common(restrict);

  std::string kind = "pm", format = "dimacs", restriction;
  int value = 1, degree_cap = 16;
  auto* emit = app.add_subcommand("emit", "write a formula as DIMACS CNF or polynomial text");
  emit->add_option("graph", graph, "graph file")->required();
  emit->add_option("--kind", kind, "pm, card or tseitin")
      ->check(CLI::IsMember({"pm", "card", "tseitin"}))
      ->capture_default_str();
  emit->add_option("--value", value, "b for card, charge for tseitin (every vertex)")->capture_default_str();
  emit->add_option("--format", format, "dimacs or poly")->check(CLI::IsMember({"dimacs", "poly"}))->capture_default_str();
  emit->add_option("--restriction", restriction, "restriction artifact to apply first");
  emit->add_option("--degree-cap", degree_cap, "largest axiom width for CNF")->capture_default_str();
  add_common(emit);

  std::string cut_path;
  auto* verify = app.add_subcommand("verify", "independent check of an embedding or a cut");
  verify->add_option("--host", host, "host graph file")->required();
  verify->add_option("--embedding", embedding, "embedding artifact");
  verify->add_option("--pattern", pattern, "pattern file (default: the one in the artifact)");
  verify->add_option("--cut", cut_path, "cut artifact");
  add_common(verify);

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "re-run an artifact's config; compares bytes unless -o is given");
  replay->add_option("artifact", replay_path, "artifact file")->required();
  replay->add_option("-o,--output", out_path, "write the regenerated artifact here");
  replay->add_option("--jobs", jobs, "threads for independent trials");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kUsage;
  }

  try {
    Json config;
    bool compare = false;
    if (replay->parsed()) {
      config = cli::config_of_artifact(slurp(replay_path));
      compare = out_path.empty();
    } else if (gen->parsed()) {
      config = {{"command", "gen"}, {"seed", seed}};
      if (!family.empty()) {
        config["family"] = family;
      } else {
        if (n <= 0) throw Error(ErrorCode::kInvalidArgument, "gen needs -n (or --family)");
        config["n"] = n;
        if (layers.empty()) {
          config["d"] = d;
        } else {
          config["layers"] = layers;
        }
      }
    } else if (analyze->parsed()) {
      config = {{"command", "analyze"}, {"seed", seed}, {"graph", graph}};
    } else if (cut->parsed()) {
      config = {{"command", "cut"}, {"seed", seed}, {"graph", graph}, {"c", c}, {"eps", eps},
                {"max_resamples", max_resamples}};
    } else if (partition->parsed()) {
      config = {{"command", "partition"}, {"seed", seed},         {"graph", graph},
                {"c", c},                 {"eps", eps},           {"kappa", kappa},
                {"ell", ell},             {"probe_trials", probe_trials}, {"pm_trials", pm_trials},
                {"max_resamples", max_resamples}};
    } else if (embed->parsed()) {
      const Json pat = pattern_json(pattern);
      const int edges = static_cast<int>(pat.at("edges").size());
      config = {{"command", "embed"},
                {"seed", seed},
                {"host", host},
                {"partition", optional_path(partition_path)},
                {"pattern", pat},
                {"mode", mode},
                {"alpha", optional_value(alpha_opt, alpha)},
                {"k", k},
                {"sigma", sigma},
                {"rho", rho},
                {"parities", parities_to_json(parities_for(parity, edges))},
                {"max_iterations", max_iterations}};
    } else if (lift->parsed()) {
      config = {{"command", "lift"}, {"seed", seed}, {"graph", graph}};
    } else if (restrict->parsed()) {
      config = {{"command", "restrict"}, {"seed", seed}, {"host", host}};
      if (t_opt->count()) {
        config["t"] = t;
      } else if (!embedding.empty()) {
        config["embedding"] = embedding;
      } else {
        throw Error(ErrorCode::kInvalidArgument, "restrict needs --embedding or --t");
      }
    } else if (emit->parsed()) {
      config = {{"command", "emit"},   {"seed", seed},     {"graph", graph},
                {"kind", kind},        {"value", value},   {"format", format},
                {"restriction", optional_path(restriction)}, {"degree_cap", degree_cap}};
    } else if (verify->parsed()) {
      config = {{"command", "verify"}, {"seed", seed}, {"host", host}};
      if (!cut_path.empty()) {
        config["cut"] = cut_path;
      } else if (!embedding.empty()) {
        config["embedding"] = embedding;
        config["pattern"] = optional_path(pattern);
      } else {
        throw Error(ErrorCode::kInvalidArgument, "verify needs --embedding or --cut");
      }
    }

    const cli::RunResult result = cli::execute(config, jobs);
    if (compare) {
      const bool same = slurp(replay_path) == result.data;
      std::cout << (same ? "replay: identical" : "replay: DIFFERS") << '\n';
      return same ? cli::kOk : cli::kConstructiveFailure;
    }
    if (out_path.empty()) {
      std::cout << result.data;
      std::cerr << result.summary << '\n';
    } else {
      write_text(out_path, result.data);
      std::cout << result.summary << '\n';
    }
    return result.exit_code;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsage;
  }
}
