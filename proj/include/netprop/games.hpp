#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "netprop/graphs.hpp"
#include "netprop/markov.hpp"

namespace netprop {

enum class GameMode { SeedingQuality, SeedingOnly };

/// Smoothed quality function parameters: g_r(w; xi, u) = (w_r + xi_r u) / (1'w + u),
/// with xi a strictly positive simplex vector and u > 0.
struct PresetQuality {
  Vector xi;
  double u = 0.0;
};

/// R competing companies investing on a shared network. `budgets` has one
/// entry per company; `pcg` is the fixed conversion graph of the
/// seeding-only game and is ignored in seeding-quality mode.
struct GameConfig {
  SocialNetwork net;
  OpenMindedness alpha;
  Vector budgets;
  double gamma = 1.0;
  GameMode mode = GameMode::SeedingQuality;
  std::optional<ProductConversionGraph> pcg;
  std::optional<PresetQuality> preset;

  int companies() const { return static_cast<int>(budgets.size()); }
};

void validate_game_config(const GameConfig& config);

/// Stage action of all companies: X(i, r) is company r's seeding spend on
/// node i, w(r) its quality spend (all-zero in seeding-only mode).
struct Allocation {
  Matrix X;
  Vector w;
};

struct BudgetCheck {
  bool ok = false;
  Vector thresholds;  // per company; budgets must exceed these strictly
};

/// Interior-equilibrium budget condition. Seeding-quality:
///   c_r > max{ n g 1'(1-a)/1'a, (n/min_i a_i - 1) g };
/// seeding-only: c_r > (1'a / min_i a_i - 1) g.
BudgetCheck verify_budget_conditions(const GameConfig& config);

/// Closed-form stage Nash equilibrium of the seeding-quality game, with
/// b_r = A~ p_r:
///   x*_ir = (a_i/n) c_r + (a_i g / n) 1'b_r - g b_ir,
///   w*_r  = (1 - 1'a/n) (c_r + g 1'b_r).
/// With preset quality, w*_r is lowered by u (1'a/n) xi_r and the seeding
/// column rescales so the budget still binds. Strictly positive and
/// budget-binding whenever the budget condition holds.
Allocation nash_seeding_quality(const GameConfig& config, const Matrix& P);

/// Seeding-only stage Nash:  x*_r = ((c_r + g 1'b_r)/1'a) a - g b_r.
Allocation nash_seeding_only(const GameConfig& config, const Matrix& P);

/// Adoption update under seeding. Each unit of seeding spend adds a virtual
/// always-adopting neighbor reached with probability x_ir/(x^(i) 1 + g);
/// quality spend steers the self-conversion through g_r(w):
///   p'_ir = a_i g/(S_i+g) (A~ P)_ir + a_i x_ir/(S_i+g) + (1-a_i) g_r(w).
Matrix game_step_seeding_quality(const GameConfig& config, const Matrix& P,
                                 const Allocation& allocation);

/// Seeding-only update with the fixed conversion graph:
///   p'_ir = a_i (g (A~ P)_ir + x_ir)/(S_i+g) + (1-a_i) (P Delta)_ir.
Matrix game_step_seeding_only(const GameConfig& config, const Matrix& P,
                              const Allocation& allocation);

/// One step of the matrix-form closed loop of the seeding-only game under
/// Nash play:
///   P' = diag(a) (1 c' + g 1 (1' A~ P)) / (1'c + n g) + (I - diag(a)) P Delta.
/// Kept as an independent code path to cross-check game_step_seeding_only.
Matrix seeding_only_nash_closed_loop(const GameConfig& config, const Matrix& P);

struct BestResponseReport {
  double max_gain = 0.0;
  bool ok = false;
};

/// Numerical Nash verification: samples `trials` random full-budget
/// reallocations for `company` (Dirichlet-uniform over its action simplex)
/// plus deterministic coordinate-pair transfers at the given relative step
/// sizes, holding everyone else fixed, and reports the best payoff gain
/// after one step. Deviation trials are independent; parallel execution
/// reduces with max and reproduces the serial scan.
BestResponseReport best_response_check(const GameConfig& config, const Matrix& P,
                                       const Allocation& allocation, int company, int trials,
                                       std::span<const double> step_sizes, std::uint64_t seed,
                                       ExecutionMode mode = ExecutionMode::Parallel);

}  // namespace netprop
