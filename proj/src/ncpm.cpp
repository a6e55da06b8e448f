#include "netprop/ncpm.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace netprop {

namespace {

void require_dims(const SocialNetwork& net, const ProductConversionGraph& pcg, const Matrix& P) {
  if (P.rows() != net.n || P.cols() != pcg.products) {
    fail(ErrorCode::DimensionMismatch,
         "probability matrix must be " + std::to_string(net.n) + " x " +
             std::to_string(pcg.products));
  }
}

void require_alpha(const SocialNetwork& net, const OpenMindedness& alpha) {
  if (alpha.alpha.size() != net.n) {
    fail(ErrorCode::DimensionMismatch, "alpha length does not match node count");
  }
}

}  // namespace

Matrix checked_probability_matrix(Matrix P, ErrorCode code) {
  return checked_row_stochastic(std::move(P), code);
}

Matrix social_self_map(const SocialNetwork& net, const OpenMindedness& alpha,
                       const ProductConversionGraph& pcg, const Matrix& P) {
  require_dims(net, pcg, P);
  require_alpha(net, alpha);
  Matrix out = alpha.alpha.asDiagonal() * (net.normalized * P) +
               (1.0 - alpha.alpha.array()).matrix().asDiagonal() * (P * pcg.delta);
  clamp_unit_interval(out);
  return out;
}

Matrix self_social_map(const SocialNetwork& net, const OpenMindedness& alpha,
                       const ProductConversionGraph& pcg, const Matrix& P) {
  require_dims(net, pcg, P);
  require_alpha(net, alpha);
  const Vector stay = P * pcg.delta.diagonal();  // (P d)_i, the stay probability of node i
  Matrix out = P * pcg.delta;
  out.noalias() += (alpha.alpha.cwiseProduct(stay)).asDiagonal() * (net.normalized * P);
  out.noalias() -= alpha.alpha.asDiagonal() * P * pcg.delta.diagonal().asDiagonal();
  clamp_unit_interval(out);
  return out;
}

TwoProductParams TwoProductParams::from_diagonal(double d11, double d22) {
  TwoProductParams p;
  p.delta11 = d11;
  p.delta12 = 1.0 - d11;
  p.delta21 = 1.0 - d22;
  p.delta22 = d22;
  return p;
}

TwoProductParams TwoProductParams::from_matrix(const Matrix& delta2x2) {
  if (delta2x2.rows() != 2 || delta2x2.cols() != 2) {
    fail(ErrorCode::DimensionMismatch, "two-product parameters need a 2x2 matrix");
  }
  TwoProductParams p;
  p.delta11 = delta2x2(0, 0);
  p.delta12 = delta2x2(0, 1);
  p.delta21 = delta2x2(1, 0);
  p.delta22 = delta2x2(1, 1);
  if (std::abs(p.delta11 + p.delta12 - 1.0) > 1e-12 ||
      std::abs(p.delta21 + p.delta22 - 1.0) > 1e-12) {
    fail(ErrorCode::NotRowStochastic, "two-product rows must sum to 1 within 1e-12");
  }
  return p;
}

void TwoProductParams::validate_open_interval() const {
  for (double v : {delta11, delta12, delta21, delta22}) {
    if (!(v > 0.0 && v < 1.0)) {
      fail(ErrorCode::InvalidEntry,
           "two-product parameters must lie strictly inside (0,1), got " + std::to_string(v));
    }
  }
}

void TwoProductParams::require_order() const {
  if (delta22 < delta11) {
    fail(ErrorCode::ParameterOrderViolated,
         "requires delta22 >= delta11; relabel the products");
  }
}

Vector two_product_h(const TwoProductParams& params, const SocialNetwork& net,
                     const OpenMindedness& alpha, const Vector& x) {
  require_alpha(net, alpha);
  if (x.size() != net.n) fail(ErrorCode::DimensionMismatch, "x length does not match node count");
  const Vector social = net.normalized * x;  // x_{-i}
  Vector out = Vector::Constant(net.n, params.delta12) +
               (1.0 - params.delta12 - params.delta21) * x +
               params.delta11 * alpha.alpha.cwiseProduct(social) -
               params.delta22 * alpha.alpha.cwiseProduct(x) +
               (params.delta22 - params.delta11) *
                   alpha.alpha.cwiseProduct(x.cwiseProduct(social));
  clamp_unit_interval(out);
  return out;
}

Vector two_product_T(const TwoProductParams& params, const SocialNetwork& net,
                     const OpenMindedness& alpha, const Vector& x) {
  require_alpha(net, alpha);
  if (x.size() != net.n) fail(ErrorCode::DimensionMismatch, "x length does not match node count");
  const Vector k_diag =
      Vector::Constant(net.n, params.delta12 + params.delta21) + params.delta22 * alpha.alpha;
  const Vector social = net.normalized * x;
  Vector out = Vector::Constant(net.n, params.delta12) +
               params.delta11 * alpha.alpha.cwiseProduct(social) +
               (params.delta22 - params.delta11) *
                   alpha.alpha.cwiseProduct(x.cwiseProduct(social));
  out = out.cwiseQuotient(k_diag);
  clamp_unit_interval(out);
  return out;
}

Vector two_product_contraction_moduli(const TwoProductParams& params,
                                      const OpenMindedness& alpha) {
  const auto& a = alpha.alpha.array();
  return ((2.0 * params.delta22 - params.delta11) * a /
          (params.delta12 + params.delta21 + params.delta22 * a))
      .matrix();
}

Vector solve_two_product_fixed_point(const TwoProductParams& params, const SocialNetwork& net,
                                     const OpenMindedness& alpha, double tol) {
  params.validate_open_interval();
  params.require_order();
  const auto map = [&](const Vector& x) { return two_product_T(params, net, alpha, x); };
  auto result = iterate_map<Vector>(map, Vector::Constant(net.n, 0.5), tol, 1'000'000);
  if (!result.converged) {
    fail(ErrorCode::NotConverged, "T-iteration residual " + std::to_string(result.residual));
  }
  const Vector& p = result.final_value;
  const double h_residual = inf_norm(two_product_h(params, net, alpha, p) - p);
  if (h_residual > 10.0 * tol) {
    fail(ErrorCode::InvariantViolated,
         "h and T disagree on the fixed point: residual " + std::to_string(h_residual));
  }
  return p;
}

}  // namespace netprop
