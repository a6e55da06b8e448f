#include "netprop/games.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "netprop/ncpm.hpp"

namespace netprop {

namespace {

void require_probability(const GameConfig& config, const Matrix& P) {
  if (P.rows() != config.net.n || P.cols() != config.companies()) {
    fail(ErrorCode::DimensionMismatch, "P must be n x R");
  }
}

void require_feasible(const GameConfig& config, const Allocation& allocation) {
  const int n = config.net.n;
  const int companies = config.companies();
  if (allocation.X.rows() != n || allocation.X.cols() != companies ||
      allocation.w.size() != companies) {
    fail(ErrorCode::DimensionMismatch, "allocation shape does not match the game");
  }
  if (allocation.X.minCoeff() < -1e-12 || allocation.w.minCoeff() < -1e-12) {
    fail(ErrorCode::InvalidEntry, "allocation entries must be nonnegative");
  }
  for (int r = 0; r < companies; ++r) {
    const double spend = allocation.X.col(r).sum() + allocation.w[r];
    if (spend > config.budgets[r] + 1e-9) {
      fail(ErrorCode::InvalidEntry, "company " + std::to_string(r) + " overspends its budget");
    }
  }
}

Vector quality_shares(const GameConfig& config, const Vector& w) {
  const int companies = config.companies();
  Vector g(companies);
  if (config.preset) {
    const double total = w.sum() + config.preset->u;
    for (int r = 0; r < companies; ++r) g[r] = (w[r] + config.preset->xi[r] * config.preset->u) / total;
    return g;
  }
  const double total = w.sum();
  if (total <= 0.0) {
    fail(ErrorCode::ZeroQualityVector, "all quality investments are zero and no preset is set");
  }
  for (int r = 0; r < companies; ++r) g[r] = w[r] > 0.0 ? w[r] / total : 0.0;
  return g;
}

double stage_payoff(const GameConfig& config, const Matrix& P, const Allocation& allocation,
                    int company) {
  const Matrix next = config.mode == GameMode::SeedingQuality
                          ? game_step_seeding_quality(config, P, allocation)
                          : game_step_seeding_only(config, P, allocation);
  return next.col(company).sum();
}

}  // namespace

void validate_game_config(const GameConfig& config) {
  const int companies = config.companies();
  if (companies < 2) fail(ErrorCode::ConfigInvalid, "a game needs at least two companies");
  if (config.alpha.alpha.size() != config.net.n) {
    fail(ErrorCode::DimensionMismatch, "alpha length does not match node count");
  }
  if (config.budgets.minCoeff() <= 0.0) {
    fail(ErrorCode::ConfigInvalid, "budgets must be strictly positive");
  }
  if (!(config.gamma > 0.0)) fail(ErrorCode::ConfigInvalid, "gamma must be strictly positive");
  if (config.mode == GameMode::SeedingOnly) {
    if (!config.pcg) fail(ErrorCode::ConfigInvalid, "seeding-only mode needs a conversion graph");
    if (config.pcg->products != companies) {
      fail(ErrorCode::DimensionMismatch, "conversion graph size must match the company count");
    }
  }
  if (config.preset) {
    if (config.preset->xi.size() != companies) {
      fail(ErrorCode::DimensionMismatch, "preset xi must have one entry per company");
    }
    if (config.preset->xi.minCoeff() <= 0.0 ||
        std::abs(config.preset->xi.sum() - 1.0) > 1e-12 || !(config.preset->u > 0.0)) {
      fail(ErrorCode::ConfigInvalid, "preset requires xi > 0 on the simplex and u > 0");
    }
  }
}

BudgetCheck verify_budget_conditions(const GameConfig& config) {
  validate_game_config(config);
  const double n = static_cast<double>(config.net.n);
  const double alpha_sum = config.alpha.alpha.sum();
  const double alpha_min = config.alpha.alpha.minCoeff();
  double threshold = 0.0;
  if (config.mode == GameMode::SeedingQuality) {
    threshold = std::max(n * config.gamma * (n - alpha_sum) / alpha_sum,
                         (n / alpha_min - 1.0) * config.gamma);
  } else {
    threshold = (alpha_sum / alpha_min - 1.0) * config.gamma;
  }
  BudgetCheck check;
  check.thresholds = Vector::Constant(config.companies(), threshold);
  check.ok = (config.budgets.array() > threshold).all();
  return check;
}

Allocation nash_seeding_quality(const GameConfig& config, const Matrix& P) {
  if (config.mode != GameMode::SeedingQuality) {
    fail(ErrorCode::ConfigInvalid, "config mode is not seeding-quality");
  }
  const BudgetCheck check = verify_budget_conditions(config);
  if (!check.ok) {
    fail(ErrorCode::BudgetConditionViolated,
         "budgets must exceed " + std::to_string(check.thresholds[0]) +
             " for an interior equilibrium");
  }
  require_probability(config, P);

  const int n = config.net.n;
  const int companies = config.companies();
  const double alpha_sum = config.alpha.alpha.sum();
  const Matrix beta = config.net.normalized * P;        // beta_ir = (A~ p_r)_i
  const Vector beta_total = beta.colwise().sum();       // 1' beta_r

  Allocation out;
  out.w.resize(companies);
  out.X.resize(n, companies);
  for (int r = 0; r < companies; ++r) {
    const double pot = config.budgets[r] + config.gamma * beta_total[r];
    out.w[r] = (1.0 - alpha_sum / n) * pot;
    if (config.preset) out.w[r] -= config.preset->u * (alpha_sum / n) * config.preset->xi[r];
    // Seeding follows x~*_ir = (a_i / 1'a)(c_r - w_r + g 1'b_r) shifted by
    // the virtual-node mass already present, x_ir = x~_ir - g b_ir.
    const double column_scale = (config.budgets[r] - out.w[r] + config.gamma * beta_total[r]) /
                                alpha_sum;
    for (int i = 0; i < n; ++i) {
      out.X(i, r) = config.alpha.alpha[i] * column_scale - config.gamma * beta(i, r);
    }
  }
  if (out.X.minCoeff() <= 0.0 || out.w.minCoeff() <= 0.0) {
    fail(ErrorCode::BudgetConditionViolated,
         "equilibrium is not interior for these budgets (boundary case unsupported)");
  }
  return out;
}

Allocation nash_seeding_only(const GameConfig& config, const Matrix& P) {
  if (config.mode != GameMode::SeedingOnly) {
    fail(ErrorCode::ConfigInvalid, "config mode is not seeding-only");
  }
  const BudgetCheck check = verify_budget_conditions(config);
  if (!check.ok) {
    fail(ErrorCode::BudgetConditionViolated,
         "budgets must exceed " + std::to_string(check.thresholds[0]) +
             " for an interior equilibrium");
  }
  require_probability(config, P);

  const Matrix beta = config.net.normalized * P;
  const Vector beta_total = beta.colwise().sum();
  const double alpha_sum = config.alpha.alpha.sum();

  Allocation out;
  out.w = Vector::Zero(config.companies());
  out.X.resize(config.net.n, config.companies());
  for (int r = 0; r < config.companies(); ++r) {
    const double scale = (config.budgets[r] + config.gamma * beta_total[r]) / alpha_sum;
    out.X.col(r) = scale * config.alpha.alpha - config.gamma * beta.col(r);
  }
  if (out.X.minCoeff() <= 0.0) {
    fail(ErrorCode::BudgetConditionViolated,
         "equilibrium is not interior for these budgets (boundary case unsupported)");
  }
  return out;
}

Matrix game_step_seeding_quality(const GameConfig& config, const Matrix& P,
                                 const Allocation& allocation) {
  if (config.mode != GameMode::SeedingQuality) {
    fail(ErrorCode::ConfigInvalid, "config mode is not seeding-quality");
  }
  require_probability(config, P);
  require_feasible(config, allocation);

  const Vector g = quality_shares(config, allocation.w);
  const Matrix social = config.net.normalized * P;
  const Vector spend = allocation.X.rowwise().sum();

  Matrix next(config.net.n, config.companies());
  for (int i = 0; i < config.net.n; ++i) {
    const double a = config.alpha.alpha[i];
    const double denom = spend[i] + config.gamma;
    for (int r = 0; r < config.companies(); ++r) {
      next(i, r) = a * (config.gamma * social(i, r) + allocation.X(i, r)) / denom +
                   (1.0 - a) * g[r];
    }
  }
  clamp_unit_interval(next);
  return next;
}

Matrix game_step_seeding_only(const GameConfig& config, const Matrix& P,
                              const Allocation& allocation) {
  if (config.mode != GameMode::SeedingOnly) {
    fail(ErrorCode::ConfigInvalid, "config mode is not seeding-only");
  }
  require_probability(config, P);
  require_feasible(config, allocation);

  const Matrix social = config.net.normalized * P;
  const Matrix converted = P * config.pcg->delta;
  const Vector spend = allocation.X.rowwise().sum();

  Matrix next(config.net.n, config.companies());
  for (int i = 0; i < config.net.n; ++i) {
    const double a = config.alpha.alpha[i];
    const double denom = spend[i] + config.gamma;
    for (int r = 0; r < config.companies(); ++r) {
      next(i, r) = a * (config.gamma * social(i, r) + allocation.X(i, r)) / denom +
                   (1.0 - a) * converted(i, r);
    }
  }
  clamp_unit_interval(next);
  return next;
}

Matrix seeding_only_nash_closed_loop(const GameConfig& config, const Matrix& P) {
  if (config.mode != GameMode::SeedingOnly || !config.pcg) {
    fail(ErrorCode::ConfigInvalid, "closed loop applies to the seeding-only game");
  }
  require_probability(config, P);
  const double pool = config.budgets.sum() + config.net.n * config.gamma;
  const Eigen::RowVectorXd beta_total = Vector::Ones(config.net.n).transpose() *
                                        (config.net.normalized * P);
  Matrix next(config.net.n, config.companies());
  for (int i = 0; i < config.net.n; ++i) {
    for (int r = 0; r < config.companies(); ++r) {
      next(i, r) = config.alpha.alpha[i] *
                   (config.budgets[r] + config.gamma * beta_total[r]) / pool;
    }
  }
  next.noalias() +=
      (1.0 - config.alpha.alpha.array()).matrix().asDiagonal() * (P * config.pcg->delta);
  clamp_unit_interval(next);
  return next;
}

BestResponseReport best_response_check(const GameConfig& config, const Matrix& P,
                                       const Allocation& allocation, int company, int trials,
                                       std::span<const double> step_sizes, std::uint64_t seed,
                                       ExecutionMode mode) {
  validate_game_config(config);
  require_probability(config, P);
  if (company < 0 || company >= config.companies()) {
    fail(ErrorCode::ConfigInvalid, "company index out of range");
  }

  const double base = stage_payoff(config, P, allocation, company);
  const int n = config.net.n;
  const bool with_quality = config.mode == GameMode::SeedingQuality;
  const int dims = n + (with_quality ? 1 : 0);
  const double budget = config.budgets[company];

  const auto payoff_at = [&](const Vector& coords) {
    Allocation deviated = allocation;
    deviated.X.col(company) = coords.head(n);
    deviated.w[company] = with_quality ? coords[n] : 0.0;
    return stage_payoff(config, P, deviated, company);
  };

  double max_gain = -std::numeric_limits<double>::infinity();

  const auto trial_gain = [&](int k) {
    RngStream rng(seed, static_cast<std::uint64_t>(k));
    Vector coords(dims);
    for (int j = 0; j < dims; ++j) coords[j] = rng.exponential();
    coords *= budget / coords.sum();
    return payoff_at(coords) - base;
  };

  if (mode == ExecutionMode::Parallel) {
#pragma omp parallel for schedule(static) reduction(max : max_gain)
    for (int k = 0; k < trials; ++k) max_gain = std::max(max_gain, trial_gain(k));
  } else {
    for (int k = 0; k < trials; ++k) max_gain = std::max(max_gain, trial_gain(k));
  }

  // Deterministic pairwise budget transfers around the candidate point.
  Vector nash_coords(dims);
  nash_coords.head(n) = allocation.X.col(company);
  if (with_quality) nash_coords[n] = allocation.w[company];
  for (double h : step_sizes) {
    const double amount = h * budget;
    for (int a = 0; a < dims; ++a) {
      if (nash_coords[a] < amount) continue;
      for (int b = 0; b < dims; ++b) {
        if (a == b) continue;
        Vector coords = nash_coords;
        coords[a] -= amount;
        coords[b] += amount;
        if (coords.sum() > budget + 1e-9) continue;
        max_gain = std::max(max_gain, payoff_at(coords) - base);
      }
    }
  }

  BestResponseReport report;
  report.max_gain = max_gain;
  report.ok = max_gain <= 1e-9;
  return report;
}

}  // namespace netprop
