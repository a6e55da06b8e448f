#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "netprop/graphs.hpp"
#include "netprop/ncpm.hpp"

namespace netprop {

/// zeta = 1 - sum_r min_s delta_sr (one minus the sum of column minima).
/// Strictly below 1 iff some column of the matrix is strictly positive.
double zeta_constant(const Matrix& row_stochastic);

struct ContractionConstants {
  double zeta = 0.0;     // zeta(Delta)
  double epsilon = 0.0;  // alpha_max + (1 - alpha_max) * zeta(Delta)
};

/// Per-step contraction rate of the social-self map for a strongly
/// connected conversion graph (Case 1 only; requires a strictly positive
/// column).
ContractionConstants contraction_constants(const ProductConversionGraph& pcg,
                                           const OpenMindedness& alpha);

enum class GammaProvenance { ClosedForm, Simulated };

inline const char* to_string(GammaProvenance p) {
  return p == GammaProvenance::ClosedForm ? "closed_form" : "simulated";
}

/// Limit of the social-self mean-field iteration. All rows of `limit` are
/// identical; transient products carry 0. `rate` is filled for Case 1,
/// `gammas` (per-SCC mass shares, summing to 1) for Cases 3 and 4 -- closed
/// form for Case 3, read off a converged iteration for Case 4.
struct AsymptoticPrediction {
  DeltaCase case_label = DeltaCase::Case1;
  Matrix limit;
  std::optional<double> rate;
  std::optional<Vector> gammas;
  std::optional<GammaProvenance> gamma_provenance;
  std::size_t iterations_used = 0;
};

/// Requires: every absorbing SCC aperiodic with a strictly positive column,
/// and every transient row leaking mass (row sum over the transient part
/// strictly below 1); otherwise AssumptionViolated listing the failures.
AsymptoticPrediction predict_asymptotics(const SocialNetwork& net, const OpenMindedness& alpha,
                                         const ProductConversionGraph& pcg, const Matrix& P0);

/// Certified interval for the two-product fixed point,
///   1/2 <= p*_i <= d12 / (d12 + d21),
/// and the per-node bound on p*_i - (A~ p*)_i,
///   (1 - a_i/2)/a_i * (d22 - d11)/(d22 + d11).
struct FixedPointBounds {
  double lower = 0.5;
  double upper = 0.5;
  Vector node_gap_bound;
};

FixedPointBounds fixed_point_bounds(const TwoProductParams& params, const OpenMindedness& alpha);

/// Jacobian of the two-product map h at a point p:
///   J = (1-d12-d21) I + d11 diag(a) A~ - d22 diag(a)
///       + (d22-d11) diag(a) (diag(p) A~ + diag(A~ p)).
/// Of the form (diagonal) + (positive diagonal) * A, hence all eigenvalues
/// are real.
Matrix two_product_jacobian(const SocialNetwork& net, const OpenMindedness& alpha,
                            const TwoProductParams& params, const Vector& p);

/// rho(M). Dense eigendecomposition up to `dense_limit` rows, power
/// iteration on |M| beyond it.
double spectral_radius(const Matrix& m, int dense_limit = 2000);

struct StabilityReport {
  double local_threshold = 1.0;   // 8 d11 d22 / ((d22-d11)^2 + 8 d11 d22)
  double global_threshold = 1.0;  // (d22+d11) / (3 d22 - d11)
  std::vector<bool> local_sufficient;
  std::vector<bool> global_sufficient;
  double jacobian_spectral_radius = 0.0;
  double jacobian_max_imag = 0.0;     // largest |Im| among Jacobian eigenvalues
  double global_rate_bound = 0.0;     // max_i max(eps_i, K_i eps_i + K_i - 1)
};

/// Evaluates both sufficient stability conditions per node and the exact
/// Jacobian spectrum at the supplied fixed point. Report-only.
StabilityReport check_stability(const SocialNetwork& net, const OpenMindedness& alpha,
                                const TwoProductParams& params, const Vector& p_star);

}  // namespace netprop
