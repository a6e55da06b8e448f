#include "netprop/experiment.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "netprop/analysis.hpp"
#include "netprop/games.hpp"
#include "netprop/graph_gen.hpp"
#include "netprop/markov.hpp"
#include "netprop/ncpm.hpp"

namespace netprop {

namespace {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
  return splitmix64(master ^ splitmix64(tag));
}

const Json& require_field(const Json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) {
    fail(ErrorCode::ConfigInvalid, path.empty() ? key + ": missing" : path + "." + key + ": missing");
  }
  return obj.at(key);
}

double get_number(const Json& obj, const std::string& path, const std::string& key) {
  const Json& v = require_field(obj, path, key);
  if (!v.is_number()) {
    fail(ErrorCode::ConfigInvalid, (path.empty() ? key : path + "." + key) + ": expected a number");
  }
  return v.get<double>();
}

std::string get_string(const Json& obj, const std::string& path, const std::string& key) {
  const Json& v = require_field(obj, path, key);
  if (!v.is_string()) {
    fail(ErrorCode::ConfigInvalid, (path.empty() ? key : path + "." + key) + ": expected a string");
  }
  return v.get<std::string>();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::ConfigInvalid, "cannot write " + path);
  out << content;
}

std::string config_comment(const Json& resolved) {
  return "# config " + resolved.dump() + "\n";
}

Vector build_alpha(const Json& spec, int n) {
  const std::string kind = get_string(spec, "alpha", "kind");
  if (kind == "explicit") {
    Vector v = vector_from_json(require_field(spec, "alpha", "values"), "alpha.values");
    if (v.size() != n) fail(ErrorCode::ConfigInvalid, "alpha.values: expected " + std::to_string(n) + " entries");
    return v;
  }
  if (kind == "uniform") {
    const double lo = get_number(spec, "alpha", "lo");
    const double hi = get_number(spec, "alpha", "hi");
    if (!(lo > 0.0 && lo <= hi && hi < 1.0)) {
      fail(ErrorCode::ConfigInvalid, "alpha: need 0 < lo <= hi < 1");
    }
    RngStream rng(spec.at("seed").get<std::uint64_t>());
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * rng.uniform();
    return v;
  }
  fail(ErrorCode::ConfigInvalid, "alpha.kind: unknown kind '" + kind + "'");
}

Matrix build_p0(const Json& spec, int n, int products) {
  const std::string kind = get_string(spec, "p0", "kind");
  std::vector<char> zeroed(products, 0);
  if (spec.contains("zero_products")) {
    for (const auto& idx : spec.at("zero_products")) {
      const int r = idx.get<int>();
      if (r < 0 || r >= products) fail(ErrorCode::ConfigInvalid, "p0.zero_products: index out of range");
      zeroed[r] = 1;
    }
  }
  Matrix p0(n, products);
  if (kind == "explicit") {
    p0 = matrix_from_json(require_field(spec, "p0", "rows"), "p0.rows");
    if (p0.rows() != n || p0.cols() != products) {
      fail(ErrorCode::ConfigInvalid, "p0.rows: expected " + std::to_string(n) + " x " +
                                         std::to_string(products));
    }
  } else if (kind == "uniform") {
    int live = 0;
    for (char z : zeroed) live += z ? 0 : 1;
    if (live == 0) fail(ErrorCode::ConfigInvalid, "p0: every product is zeroed");
    for (int r = 0; r < products; ++r) {
      p0.col(r).setConstant(zeroed[r] ? 0.0 : 1.0 / live);
    }
  } else if (kind == "point") {
    const int r = static_cast<int>(get_number(spec, "p0", "product"));
    if (r < 0 || r >= products) fail(ErrorCode::ConfigInvalid, "p0.product: index out of range");
    p0.setZero();
    p0.col(r).setOnes();
  } else if (kind == "random") {
    RngStream rng(spec.at("seed").get<std::uint64_t>());
    for (int i = 0; i < n; ++i) {
      double total = 0.0;
      for (int r = 0; r < products; ++r) {
        p0(i, r) = zeroed[r] ? 0.0 : rng.exponential();
        total += p0(i, r);
      }
      if (total <= 0.0) fail(ErrorCode::ConfigInvalid, "p0: every product is zeroed");
      p0.row(i) /= total;
    }
  } else {
    fail(ErrorCode::ConfigInvalid, "p0.kind: unknown kind '" + kind + "'");
  }
  return checked_probability_matrix(std::move(p0), ErrorCode::InvalidInitialDistribution);
}

struct ResolvedModel {
  SocialNetwork net;
  OpenMindedness alpha;
};

ResolvedModel build_model(const Json& cfg) {
  ResolvedModel model;
  model.net = generate_graph(require_field(cfg, "", "graph"));
  model.alpha = make_open_mindedness(build_alpha(require_field(cfg, "", "alpha"), model.net.n));
  return model;
}

Json stability_json(const SocialNetwork& net, const OpenMindedness& alpha,
                    const TwoProductParams& params, const Vector& p_star) {
  const auto report = check_stability(net, alpha, params, p_star);
  Json out;
  out["local_threshold"] = report.local_threshold;
  out["global_threshold"] = report.global_threshold;
  out["local"] = report.local_sufficient;
  out["global"] = report.global_sufficient;
  out["rho"] = report.jacobian_spectral_radius;
  out["max_imag"] = report.jacobian_max_imag;
  out["rate_bound"] = report.global_rate_bound;
  return out;
}

// The two-product stability theory applies when the conversion matrix is
// 2x2 with every entry inside (0,1) and the second product advantaged.
std::optional<TwoProductParams> two_product_params_if_applicable(const Matrix& delta) {
  if (delta.rows() != 2 || delta.cols() != 2) return std::nullopt;
  const auto params = TwoProductParams::from_matrix(delta);
  for (double v : {params.delta11, params.delta12, params.delta21, params.delta22}) {
    if (!(v > 0.0 && v < 1.0)) return std::nullopt;
  }
  if (params.delta22 < params.delta11) return std::nullopt;
  return params;
}

std::string csv_header(const Json& resolved, const std::string& columns) {
  return config_comment(resolved) + columns + "\n";
}

// ---------------------------------------------------------------- compare

ExperimentOutputs run_compare(const ExperimentConfig& config) {
  const Json& cfg = config.resolved;
  ResolvedModel model = build_model(cfg);
  const auto pcg = decompose_conversion_graph(matrix_from_json(require_field(cfg, "", "delta"), "delta"));
  const Matrix p0 = build_p0(require_field(cfg, "", "p0"), model.net.n, pcg.products);

  const int horizon = cfg.at("horizon").get<int>();
  const std::uint64_t samples = cfg.at("samples").get<std::uint64_t>();
  const std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
  const std::string model_name = cfg.at("model").get<std::string>();
  const ConversionOrder order = model_name == "self_social" ? ConversionOrder::SelfSocial
                                                            : ConversionOrder::SocialSelf;

  const EmpiricalTrajectory mc =
      estimate_trajectories(order, model.net, model.alpha, pcg, p0, horizon, samples, seed);

  std::vector<Matrix> ncpm;
  ncpm.reserve(horizon + 1);
  ncpm.push_back(p0);
  for (int t = 1; t <= horizon; ++t) {
    ncpm.push_back(order == ConversionOrder::SocialSelf
                       ? social_self_map(model.net, model.alpha, pcg, ncpm.back())
                       : self_social_map(model.net, model.alpha, pcg, ncpm.back()));
  }

  const int track_node = cfg.at("track").at("node").get<int>();
  const int track_product = cfg.at("track").at("product").get<int>();
  if (track_node < 0 || track_node >= model.net.n || track_product < 0 ||
      track_product >= pcg.products) {
    fail(ErrorCode::ConfigInvalid, "track: node or product out of range");
  }

  std::ostringstream csv;
  csv << csv_header(cfg, "t,node,product,mc,ncpm,abs_gap");
  double max_gap = 0.0;
  double tracked_gap = 0.0;
  for (int t = 0; t <= horizon; ++t) {
    for (int i = 0; i < model.net.n; ++i) {
      for (int r = 0; r < pcg.products; ++r) {
        const double mc_val = mc.estimate(t, i, r);
        const double ncpm_val = ncpm[t](i, r);
        const double gap = std::abs(mc_val - ncpm_val);
        max_gap = std::max(max_gap, gap);
        if (i == track_node && r == track_product) tracked_gap = std::max(tracked_gap, gap);
        csv << t << ',' << i << ',' << r << ',' << format_double(mc_val) << ','
            << format_double(ncpm_val) << ',' << format_double(gap) << '\n';
      }
    }
  }

  const std::string out_dir = cfg.at("out_dir").get<std::string>();
  const std::string csv_path = out_dir + "/compare.csv";
  write_text_file(csv_path, csv.str());

  // Raw Monte Carlo estimates on their own, one row per (t, node, product).
  std::ostringstream mc_csv;
  mc_csv << csv_header(cfg, "t,node,product,p_hat");
  for (int t = 0; t <= horizon; ++t) {
    for (int i = 0; i < model.net.n; ++i) {
      for (int r = 0; r < pcg.products; ++r) {
        mc_csv << t << ',' << i << ',' << r << ',' << format_double(mc.estimate(t, i, r)) << '\n';
      }
    }
  }
  const std::string mc_path = out_dir + "/mc.csv";
  write_text_file(mc_path, mc_csv.str());

  Json summary;
  summary["experiment"] = "compare_mc_ncpm";
  summary["config"] = cfg;
  summary["seed"] = seed;
  summary["samples"] = samples;
  summary["horizon"] = horizon;
  summary["max_abs_gap"] = max_gap;
  summary["tracked"] = Json{{"node", track_node},
                            {"product", track_product},
                            {"max_abs_gap", tracked_gap}};
  const std::string summary_path = out_dir + "/summary.json";
  write_text_file(summary_path, summary.dump(2) + "\n");
  return ExperimentOutputs{{csv_path, mc_path, summary_path}};
}

// ------------------------------------------------------------ asymptotics

ExperimentOutputs run_asymptotics(const ExperimentConfig& config) {
  const Json& cfg = config.resolved;
  ResolvedModel model = build_model(cfg);
  const auto pcg = decompose_conversion_graph(matrix_from_json(require_field(cfg, "", "delta"), "delta"));
  const Matrix p0 = build_p0(require_field(cfg, "", "p0"), model.net.n, pcg.products);
  const double tol = cfg.at("tol").get<double>();
  const int horizon = cfg.at("horizon").get<int>();

  const AsymptoticPrediction prediction = predict_asymptotics(model.net, model.alpha, pcg, p0);

  const auto map = [&](const Matrix& P) { return social_self_map(model.net, model.alpha, pcg, P); };
  const auto iteration = iterate_map<Matrix>(map, p0, tol, static_cast<std::size_t>(horizon), true);

  std::ostringstream csv;
  csv << csv_header(cfg, "t,node,product,p");
  for (std::size_t t = 0; t < iteration.trajectory.size(); ++t) {
    for (int i = 0; i < model.net.n; ++i) {
      for (int r = 0; r < pcg.products; ++r) {
        csv << t << ',' << i << ',' << r << ','
            << format_double(iteration.trajectory[t](i, r)) << '\n';
      }
    }
  }

  const std::string out_dir = cfg.at("out_dir").get<std::string>();
  const std::string csv_path = out_dir + "/trajectory.csv";
  write_text_file(csv_path, csv.str());

  Json report;
  report["experiment"] = "asymptotics";
  report["config"] = cfg;
  report["case"] = to_string(prediction.case_label);
  report["limit"] = matrix_to_json(prediction.limit);
  report["limit_row"] = vector_to_json(prediction.limit.row(0).transpose());
  report["rate"] = prediction.rate ? Json(*prediction.rate) : Json(nullptr);
  report["gammas"] = prediction.gammas ? vector_to_json(*prediction.gammas) : Json(nullptr);
  report["gamma_provenance"] =
      prediction.gamma_provenance ? Json(to_string(*prediction.gamma_provenance)) : Json(nullptr);
  report["iterate"] = Json{{"iterations", iteration.iterations},
                           {"residual", iteration.residual},
                           {"converged", iteration.converged},
                           {"gap_to_limit", inf_norm(iteration.final_value - prediction.limit)}};
  report["stability"] = Json(nullptr);
  if (const auto params = two_product_params_if_applicable(pcg.delta)) {
    const Vector p_star = solve_two_product_fixed_point(*params, model.net, model.alpha, tol);
    report["stability"] = stability_json(model.net, model.alpha, *params, p_star);
  }
  const std::string report_path = out_dir + "/prediction.json";
  write_text_file(report_path, report.dump(2) + "\n");
  return ExperimentOutputs{{csv_path, report_path}};
}

// -------------------------------------------------------------- stability

ExperimentOutputs run_stability(const ExperimentConfig& config) {
  const Json& cfg = config.resolved;
  ResolvedModel model = build_model(cfg);
  const Matrix delta = matrix_from_json(require_field(cfg, "", "delta"), "delta");
  if (delta.rows() != 2 || delta.cols() != 2) {
    fail(ErrorCode::ConfigInvalid, "delta: the stability report covers the two-product model");
  }
  const auto params = TwoProductParams::from_matrix(checked_row_stochastic(delta));
  if (params.delta22 < params.delta11) {
    fail(ErrorCode::ConfigInvalid, "delta: requires delta22 >= delta11; relabel the products");
  }
  const double tol = cfg.at("tol").get<double>();

  // Picard iteration on T, recorded so the report carries the iteration
  // count and an empirical contraction-rate estimate.
  params.validate_open_interval();
  const auto map = [&](const Vector& x) {
    return two_product_T(params, model.net, model.alpha, x);
  };
  const auto run = iterate_map<Vector>(map, Vector::Constant(model.net.n, 0.5), tol, 1'000'000,
                                       /*record_trajectory=*/true);
  if (!run.converged) {
    fail(ErrorCode::NotConverged, "fixed-point iteration residual " + std::to_string(run.residual));
  }
  const Vector& p_star = run.final_value;
  const auto bounds = fixed_point_bounds(params, model.alpha);

  Json doc;
  doc["experiment"] = "stability";
  doc["config"] = cfg;
  doc["fixed_point"] = vector_to_json(p_star);
  doc["residual"] = inf_norm(two_product_T(params, model.net, model.alpha, p_star) - p_star);
  doc["iterations"] = run.iterations;
  doc["rate_estimate"] = max_step_ratio(run.trajectory);
  doc["h_residual"] = inf_norm(two_product_h(params, model.net, model.alpha, p_star) - p_star);
  doc["bounds"] = Json{{"lower", bounds.lower},
                       {"upper", bounds.upper},
                       {"node_gap_bound", vector_to_json(bounds.node_gap_bound)}};
  doc["stability"] = stability_json(model.net, model.alpha, params, p_star);

  const std::string out_dir = cfg.at("out_dir").get<std::string>();
  const std::string path = out_dir + "/stability.json";
  write_text_file(path, doc.dump(2) + "\n");
  return ExperimentOutputs{{path}};
}

// ------------------------------------------------------------------ game

ExperimentOutputs run_game(const ExperimentConfig& config) {
  const Json& cfg = config.resolved;
  ResolvedModel model = build_model(cfg);
  const Json& game = require_field(cfg, "", "game");
  const std::string mode_name = get_string(game, "game", "mode");

  GameConfig gc;
  gc.net = std::move(model.net);
  gc.alpha = std::move(model.alpha);
  gc.budgets = vector_from_json(require_field(game, "game", "budgets"), "game.budgets");
  gc.gamma = get_number(game, "game", "gamma");
  if (mode_name == "seeding_quality") {
    gc.mode = GameMode::SeedingQuality;
  } else if (mode_name == "seeding_only") {
    gc.mode = GameMode::SeedingOnly;
    gc.pcg = decompose_conversion_graph(matrix_from_json(require_field(cfg, "", "delta"), "delta"));
  } else {
    fail(ErrorCode::ConfigInvalid, "game.mode: unknown mode '" + mode_name + "'");
  }
  if (game.contains("preset")) {
    PresetQuality preset;
    preset.xi = vector_from_json(require_field(game.at("preset"), "game.preset", "xi"),
                                 "game.preset.xi");
    preset.u = get_number(game.at("preset"), "game.preset", "u");
    gc.preset = std::move(preset);
  }
  validate_game_config(gc);

  const int companies = gc.companies();
  const Matrix p0 = build_p0(require_field(cfg, "", "p0"), gc.net.n, companies);
  const int horizon = cfg.at("horizon").get<int>();
  const std::string opponents = game.at("opponents").get<std::string>();
  const int nash_company = game.at("nash_company").get<int>();
  if (nash_company < 0 || nash_company >= companies) {
    fail(ErrorCode::ConfigInvalid, "game.nash_company: index out of range");
  }
  const std::uint64_t random_seed = game.at("random_seed").get<std::uint64_t>();

  const BudgetCheck check = verify_budget_conditions(gc);
  if (!check.ok) {
    fail(ErrorCode::BudgetConditionViolated,
         "game budgets are below the interior-equilibrium threshold " +
             std::to_string(check.thresholds[0]));
  }

  std::ostringstream steps_csv, alloc_csv, quality_csv;
  steps_csv << csv_header(cfg, "t,company,payoff,p_avg");
  alloc_csv << csv_header(cfg, "t,node,company,x");
  quality_csv << csv_header(cfg, "t,company,w");

  Matrix P = p0;
  const auto record_state = [&](int t) {
    for (int r = 0; r < companies; ++r) {
      const double payoff = P.col(r).sum();
      steps_csv << t << ',' << r << ',' << format_double(payoff) << ','
                << format_double(payoff / gc.net.n) << '\n';
    }
  };
  record_state(0);

  for (int t = 1; t <= horizon; ++t) {
    Allocation alloc = gc.mode == GameMode::SeedingQuality ? nash_seeding_quality(gc, P)
                                                           : nash_seeding_only(gc, P);
    if (opponents == "random") {
      // Every company except `nash_company` redistributes its full budget
      // uniformly at random over its own action space.
      const bool with_quality = gc.mode == GameMode::SeedingQuality;
      for (int r = 0; r < companies; ++r) {
        if (r == nash_company) continue;
        RngStream rng(random_seed, static_cast<std::uint64_t>(t) * companies + r);
        const int dims = gc.net.n + (with_quality ? 1 : 0);
        Vector coords(dims);
        for (int j = 0; j < dims; ++j) coords[j] = rng.exponential();
        coords *= gc.budgets[r] / coords.sum();
        alloc.X.col(r) = coords.head(gc.net.n);
        alloc.w[r] = with_quality ? coords[gc.net.n] : 0.0;
      }
    } else if (opponents != "nash") {
      fail(ErrorCode::ConfigInvalid, "game.opponents: expected 'nash' or 'random'");
    }

    for (int r = 0; r < companies; ++r) {
      for (int i = 0; i < gc.net.n; ++i) {
        alloc_csv << t << ',' << i << ',' << r << ',' << format_double(alloc.X(i, r)) << '\n';
      }
      quality_csv << t << ',' << r << ',' << format_double(alloc.w[r]) << '\n';
    }

    P = gc.mode == GameMode::SeedingQuality ? game_step_seeding_quality(gc, P, alloc)
                                            : game_step_seeding_only(gc, P, alloc);
    record_state(t);
  }

  const std::string out_dir = cfg.at("out_dir").get<std::string>();
  const std::string steps_path = out_dir + "/steps.csv";
  const std::string alloc_path = out_dir + "/allocations.csv";
  const std::string quality_path = out_dir + "/quality.csv";
  write_text_file(steps_path, steps_csv.str());
  write_text_file(alloc_path, alloc_csv.str());
  write_text_file(quality_path, quality_csv.str());

  Json run;
  run["experiment"] = "game";
  run["config"] = cfg;
  run["mode"] = mode_name;
  run["budgets"] = vector_to_json(gc.budgets);
  run["gamma"] = gc.gamma;
  run["horizon"] = horizon;
  run["seed"] = cfg.at("seed").get<std::uint64_t>();
  run["budget_thresholds"] = vector_to_json(check.thresholds);
  run["budget_ok"] = check.ok;
  Json final_avg = Json::array();
  for (int r = 0; r < companies; ++r) final_avg.push_back(P.col(r).sum() / gc.net.n);
  run["final_average_adoption"] = std::move(final_avg);
  const std::string run_path = out_dir + "/run.json";
  write_text_file(run_path, run.dump(2) + "\n");

  return ExperimentOutputs{{steps_path, alloc_path, quality_path, run_path}};
}

}  // namespace

SocialNetwork generate_graph(const Json& graph_spec) {
  const std::string kind = get_string(graph_spec, "graph", "kind");
  if (kind == "explicit") {
    return build_social_network(
        matrix_from_json(require_field(graph_spec, "graph", "adjacency"), "graph.adjacency"));
  }
  if (kind == "edge_list") {
    return load_edge_list(get_string(graph_spec, "graph", "path"));
  }
  if (kind == "json") {
    const auto inputs = load_model_json(get_string(graph_spec, "graph", "path"));
    if (!inputs.net) {
      fail(ErrorCode::ConfigInvalid, "graph.path: the JSON file has no adjacency field");
    }
    return *inputs.net;
  }
  const int n = static_cast<int>(get_number(graph_spec, "graph", "n"));
  if (kind == "complete") return complete_graph(n);
  if (kind == "star") return star_graph(n);
  const std::uint64_t seed =
      graph_spec.contains("seed") ? graph_spec.at("seed").get<std::uint64_t>() : 0;
  if (kind == "erdos_renyi") return erdos_renyi_graph(n, get_number(graph_spec, "graph", "p"), seed);
  if (kind == "power_law") {
    return power_law_graph(n, get_number(graph_spec, "graph", "exponent"), seed);
  }
  fail(ErrorCode::ConfigInvalid, "graph.kind: unknown kind '" + kind + "'");
}

ExperimentConfig parse_experiment_config(const Json& raw) {
  if (!raw.is_object() || raw.empty()) {
    fail(ErrorCode::ConfigInvalid, "config: expected a non-empty JSON object");
  }
  const std::string kind_name = get_string(raw, "", "experiment");
  ExperimentConfig config;
  config.resolved = raw;
  Json& cfg = config.resolved;

  if (kind_name == "compare_mc_ncpm") {
    config.kind = ExperimentKind::CompareMcNcpm;
  } else if (kind_name == "asymptotics") {
    config.kind = ExperimentKind::Asymptotics;
  } else if (kind_name == "stability") {
    config.kind = ExperimentKind::Stability;
  } else if (kind_name == "game") {
    config.kind = ExperimentKind::Game;
  } else {
    fail(ErrorCode::ConfigInvalid, "experiment: unknown kind '" + kind_name + "'");
  }

  if (!cfg.contains("seed")) cfg["seed"] = 0;
  const std::uint64_t master = cfg.at("seed").get<std::uint64_t>();
  if (!cfg.contains("out_dir")) cfg["out_dir"] = "out";
  if (!cfg.contains("tol")) cfg["tol"] = 1e-10;

  require_field(cfg, "", "graph");
  require_field(cfg, "", "alpha");
  const std::string graph_kind = get_string(cfg.at("graph"), "graph", "kind");
  if ((graph_kind == "erdos_renyi" || graph_kind == "power_law") &&
      !cfg.at("graph").contains("seed")) {
    cfg["graph"]["seed"] = derive_seed(master, 1);
  }
  if (get_string(cfg.at("alpha"), "alpha", "kind") == "uniform" &&
      !cfg.at("alpha").contains("seed")) {
    cfg["alpha"]["seed"] = derive_seed(master, 2);
  }
  if (!cfg.contains("p0")) cfg["p0"] = Json{{"kind", "uniform"}};
  if (get_string(cfg.at("p0"), "p0", "kind") == "random" && !cfg.at("p0").contains("seed")) {
    cfg["p0"]["seed"] = derive_seed(master, 3);
  }

  switch (config.kind) {
    case ExperimentKind::CompareMcNcpm: {
      require_field(cfg, "", "delta");
      if (!cfg.contains("horizon")) cfg["horizon"] = 50;
      if (!cfg.contains("samples")) cfg["samples"] = 10000;
      if (!cfg.contains("model")) cfg["model"] = "social_self";
      const std::string model = cfg.at("model").get<std::string>();
      if (model != "social_self" && model != "self_social") {
        fail(ErrorCode::ConfigInvalid, "model: expected 'social_self' or 'self_social'");
      }
      if (!cfg.contains("track")) cfg["track"] = Json{{"node", 0}, {"product", 1}};
      break;
    }
    case ExperimentKind::Asymptotics: {
      require_field(cfg, "", "delta");
      if (!cfg.contains("horizon")) cfg["horizon"] = 5000;
      break;
    }
    case ExperimentKind::Stability: {
      require_field(cfg, "", "delta");
      break;
    }
    case ExperimentKind::Game: {
      const Json& game = require_field(cfg, "", "game");
      require_field(game, "game", "mode");
      require_field(game, "game", "budgets");
      require_field(game, "game", "gamma");
      if (!cfg.contains("horizon")) cfg["horizon"] = 60;
      if (!cfg["game"].contains("opponents")) cfg["game"]["opponents"] = "nash";
      if (!cfg["game"].contains("nash_company")) cfg["game"]["nash_company"] = 0;
      if (!cfg["game"].contains("random_seed")) cfg["game"]["random_seed"] = derive_seed(master, 5);
      if (get_string(cfg.at("game"), "game", "mode") == "seeding_only") {
        require_field(cfg, "", "delta");
      }
      break;
    }
  }
  return config;
}

ExperimentOutputs run_experiment(const ExperimentConfig& config) {
  const std::string out_dir = config.resolved.at("out_dir").get<std::string>();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::ConfigInvalid, "out_dir: " + ec.message());

  switch (config.kind) {
    case ExperimentKind::CompareMcNcpm: return run_compare(config);
    case ExperimentKind::Asymptotics: return run_asymptotics(config);
    case ExperimentKind::Stability: return run_stability(config);
    case ExperimentKind::Game: return run_game(config);
  }
  fail(ErrorCode::ConfigInvalid, "experiment: unhandled kind");
}

}  // namespace netprop
