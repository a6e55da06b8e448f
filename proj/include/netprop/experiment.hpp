#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "netprop/io.hpp"

namespace netprop {

enum class ExperimentKind { CompareMcNcpm, Asymptotics, Stability, Game };

/// Fully resolved experiment description. `resolved` carries every default
/// and derived seed filled in, and is embedded verbatim in all outputs.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::CompareMcNcpm;
  Json resolved;
};

/// Validates a raw config document; errors carry the offending field path.
ExperimentConfig parse_experiment_config(const Json& raw);

/// Builds the graph named by a config "graph" object (generator or explicit
/// matrix / edge-list file).
SocialNetwork generate_graph(const Json& graph_spec);

struct ExperimentOutputs {
  std::vector<std::string> files;
};

/// Runs the experiment and writes its CSV/JSON outputs under the config's
/// out_dir. All file contents are deterministic functions of the resolved
/// config.
ExperimentOutputs run_experiment(const ExperimentConfig& config);

}  // namespace netprop
