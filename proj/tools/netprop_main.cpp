#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "netprop/experiment.hpp"
#include "netprop/io.hpp"

namespace {

int exit_code_for(const netprop::Error& e) {
  using netprop::ErrorCode;
  switch (e.code()) {
    case ErrorCode::NotConverged:
    case ErrorCode::GenerationFailed:
      return 3;
    case ErrorCode::InvariantViolated:
      return 1;
    default:
      // every other code names a problem with the supplied configuration
      return 2;
  }
}

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> samples;
  std::optional<int> horizon;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "experiment config (JSON)")->required();
  cmd->add_option("--seed", opts.seed, "override the top-level seed");
  cmd->add_option("--out-dir", opts.out_dir, "override the output directory");
  cmd->add_option("--samples", opts.samples, "override the Monte Carlo sample count");
  cmd->add_option("--horizon", opts.horizon, "override the time horizon");
}

netprop::Json load_config(const CommonOptions& opts, const char* expected_kind) {
  std::ifstream in(opts.config_path);
  if (!in) netprop::fail(netprop::ErrorCode::ConfigInvalid, "cannot open " + opts.config_path);
  netprop::Json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    netprop::fail(netprop::ErrorCode::ConfigInvalid, opts.config_path + ": " + e.what());
  }
  if (expected_kind != nullptr && !cfg.contains("experiment")) cfg["experiment"] = expected_kind;
  if (opts.seed) cfg["seed"] = *opts.seed;
  if (opts.out_dir) cfg["out_dir"] = *opts.out_dir;
  if (opts.samples) cfg["samples"] = *opts.samples;
  if (opts.horizon) cfg["horizon"] = *opts.horizon;
  return cfg;
}

int run(const CommonOptions& opts, const char* expected_kind) {
  const auto config = netprop::parse_experiment_config(load_config(opts, expected_kind));
  const auto outputs = netprop::run_experiment(config);
  for (const auto& file : outputs.files) std::cout << file << '\n';
  return 0;
}

int run_gen_graph(const CommonOptions& opts) {
  netprop::Json cfg = load_config(opts, nullptr);
  if (!cfg.contains("graph")) {
    netprop::fail(netprop::ErrorCode::ConfigInvalid, "graph: missing");
  }
  if (opts.seed) cfg["graph"]["seed"] = *opts.seed;
  const auto net = netprop::generate_graph(cfg.at("graph"));
  const std::string out_dir = cfg.value("out_dir", std::string("out"));
  std::filesystem::create_directories(out_dir);
  const std::string edge_path = out_dir + "/graph.edgelist";
  netprop::write_edge_list(net, edge_path);

  netprop::Json doc;
  doc["config"] = cfg;
  doc["n"] = net.n;
  doc["adjacency"] = netprop::matrix_to_json(net.adjacency);
  const std::string json_path = out_dir + "/graph.json";
  std::ofstream out(json_path, std::ios::binary);
  out << doc.dump(2) << '\n';

  std::cout << edge_path << '\n' << json_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Competing-product propagation on social networks: exact Monte Carlo simulation, "
               "mean-field models, asymptotic analysis and investment games"};
  app.require_subcommand(1);

  CommonOptions compare_opts, asym_opts, stab_opts, game_opts, gen_opts;
  add_common(app.add_subcommand("compare", "Monte Carlo vs mean-field trajectory comparison"),
             compare_opts);
  add_common(app.add_subcommand("asymptotics", "limit prediction plus mean-field iteration"),
             asym_opts);
  add_common(app.add_subcommand("stability", "two-product fixed point and stability report"),
             stab_opts);
  add_common(app.add_subcommand("game", "closed-loop competitive investment game"), game_opts);
  add_common(app.add_subcommand("gen-graph", "generate a social network and write it out"),
             gen_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("compare")) return run(compare_opts, "compare_mc_ncpm");
    if (app.got_subcommand("asymptotics")) return run(asym_opts, "asymptotics");
    if (app.got_subcommand("stability")) return run(stab_opts, "stability");
    if (app.got_subcommand("game")) return run(game_opts, "game");
    if (app.got_subcommand("gen-graph")) return run_gen_graph(gen_opts);
  } catch (const netprop::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
