#pragma once

#include <string>

#include "minorforge/graph_io.hpp"

namespace minorforge::cli {

enum ExitCode { kOk = 0, kConstructiveFailure = 1, kUsage = 2 };

struct RunResult {
  /// Artifact bytes (JSON, DIMACS or polynomial text).
  std::string data;
  std::string summary;
  int exit_code = kOk;
};

/// Runs the command described by `config` ("command" selects it). The
/// artifact embeds `config`, so executing it again yields the same bytes.
/// `jobs` only spreads independent trials over threads.
RunResult execute(const Json& config, int jobs = 1);

/// The config embedded in an artifact: the "config" member of a JSON
/// artifact, or the `c config` / `# config` line of a text artifact.
Json config_of_artifact(const std::string& text);

}  // namespace minorforge::cli
