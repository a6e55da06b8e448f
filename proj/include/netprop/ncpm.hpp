#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "netprop/graphs.hpp"

namespace netprop {

/// Validates an n x R adoption-probability matrix (rows on the simplex,
/// renormalized within 1e-9) and returns the cleaned copy.
Matrix checked_probability_matrix(Matrix P, ErrorCode code = ErrorCode::NotRowStochastic);

/// Social-self mean-field map
///   f(P) = diag(alpha) A~ P + (I - diag(alpha)) P Delta.
/// Maps the stacked simplices to themselves.
Matrix social_self_map(const SocialNetwork& net, const OpenMindedness& alpha,
                       const ProductConversionGraph& pcg, const Matrix& P);

/// Self-social mean-field map
///   P' = P Delta + diag(alpha) diag(P d) A~ P - diag(alpha) P diag(d),
/// with d the diagonal of Delta. Row sums are preserved.
Matrix self_social_map(const SocialNetwork& net, const OpenMindedness& alpha,
                       const ProductConversionGraph& pcg, const Matrix& P);

/// Two-product self-social parameters, stored with the convention that
/// product 2 is the (weakly) advantaged one: delta22 >= delta11 wherever a
/// fixed-point statement requires it. Row identities delta11 + delta12 = 1
/// and delta21 + delta22 = 1 must hold within 1e-12.
struct TwoProductParams {
  double delta11 = 0.5;
  double delta12 = 0.5;
  double delta21 = 0.5;
  double delta22 = 0.5;

  static TwoProductParams from_diagonal(double d11, double d22);
  static TwoProductParams from_matrix(const Matrix& delta2x2);

  void validate_open_interval() const;   // all four parameters in (0,1)
  void require_order() const;            // delta22 >= delta11, else ParameterOrderViolated
};

/// The two-product self-social update on x = p_2 (probability of the second
/// product):
///   h(x) = d12*1 + (1-d12-d21)x + d11 diag(a) A~ x - d22 diag(a) x
///          + (d22-d11) diag(a) diag(x) A~ x.
/// Maps [0,1]^n into itself.
Vector two_product_h(const TwoProductParams& params, const SocialNetwork& net,
                     const OpenMindedness& alpha, const Vector& x);

/// Contraction reformulation of the same fixed-point equation:
///   T(x) = d12 K^-1 1 + d11 K^-1 diag(a) A~ x + (d22-d11) K^-1 diag(a) diag(x) A~ x,
/// with K = (d12+d21) I + d22 diag(a). T and h share their fixed point;
/// T is a contraction with per-node modulus (2*d22-d11)*a_i / K_i.
Vector two_product_T(const TwoProductParams& params, const SocialNetwork& net,
                     const OpenMindedness& alpha, const Vector& x);

/// Per-node contraction moduli of T.
Vector two_product_contraction_moduli(const TwoProductParams& params, const OpenMindedness& alpha);

/// Plain Picard iteration record. `trajectory` (when requested) holds the
/// initial point and every iterate; `residual` is the last step size in the
/// induced infinity norm. Non-convergence is reported through the flag, not
/// an exception, so partial trajectories stay usable.
template <class State>
struct IterationResult {
  State final_value;
  std::size_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
  std::vector<State> trajectory;
};

template <class State>
IterationResult<State> iterate_map(const std::function<State(const State&)>& map, State initial,
                                   double tol = 1e-10, std::size_t max_iter = 1'000'000,
                                   bool record_trajectory = false) {
  IterationResult<State> out;
  if (record_trajectory) out.trajectory.push_back(initial);
  State x = std::move(initial);
  for (std::size_t k = 0; k < max_iter; ++k) {
    State next = map(x);
    out.residual = inf_norm(next - x);
    out.iterations = k + 1;
    x = std::move(next);
    if (record_trajectory) out.trajectory.push_back(x);
    if (out.residual <= tol) {
      out.converged = true;
      break;
    }
  }
  out.final_value = std::move(x);
  return out;
}

/// Largest step-to-step contraction ratio observed along a trajectory,
/// ignoring steps whose denominator is below `floor` (pure rounding noise).
template <class State>
double max_step_ratio(const std::vector<State>& trajectory, double floor = 1e-13) {
  double worst = 0.0;
  for (std::size_t k = 0; k + 2 < trajectory.size(); ++k) {
    const double before = inf_norm(trajectory[k + 1] - trajectory[k]);
    const double after = inf_norm(trajectory[k + 2] - trajectory[k + 1]);
    if (before > floor) worst = std::max(worst, after / before);
  }
  return worst;
}

/// Unique two-product fixed point via T-iteration (Picard, start 1/2).
/// Requires delta22 >= delta11 and all parameters in (0,1). The returned
/// point satisfies ||T(p)-p||_inf <= tol and ||h(p)-p||_inf <= 10*tol.
Vector solve_two_product_fixed_point(const TwoProductParams& params, const SocialNetwork& net,
                                     const OpenMindedness& alpha, double tol = 1e-10);

}  // namespace netprop
