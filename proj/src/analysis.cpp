#include "netprop/analysis.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace netprop {

double zeta_constant(const Matrix& row_stochastic) {
  return 1.0 - row_stochastic.colwise().minCoeff().sum();
}

ContractionConstants contraction_constants(const ProductConversionGraph& pcg,
                                           const OpenMindedness& alpha) {
  if (pcg.case_label != DeltaCase::Case1) {
    fail(ErrorCode::WrongCase, "contraction constants need a strongly connected conversion "
                               "graph, got " + std::string(to_string(pcg.case_label)));
  }
  const double column_min_sum = pcg.delta.colwise().minCoeff().sum();
  if (!(column_min_sum > 0.0)) {
    fail(ErrorCode::NoPositiveColumn, "no strictly positive column in the conversion matrix");
  }
  ContractionConstants out;
  out.zeta = 1.0 - column_min_sum;
  const double alpha_max = alpha.alpha.maxCoeff();
  out.epsilon = alpha_max + (1.0 - alpha_max) * out.zeta;
  return out;
}

namespace {

void require_theorem_assumptions(const ProductConversionGraph& pcg) {
  std::string failures;
  for (int l = 0; l < pcg.num_sccs(); ++l) {
    if (!pcg.scc_aperiodic[l]) {
      failures += " absorbing SCC " + std::to_string(l) + " is periodic;";
    }
    if (!(pcg.scc_blocks[l].colwise().minCoeff().maxCoeff() > 0.0)) {
      failures += " absorbing SCC " + std::to_string(l) + " has no strictly positive column;";
    }
  }
  for (int r = 0; r < pcg.transient_size(); ++r) {
    if (!(pcg.transient_block.row(r).sum() < 1.0)) {
      failures += " transient state " + std::to_string(pcg.transient[r]) +
                  " keeps all its mass in the transient part;";
    }
  }
  if (!failures.empty()) fail(ErrorCode::AssumptionViolated, failures);
}

// Mass share of each absorbing SCC read through the left eigenvector of the
// mixing matrix; w'(M) P^{SCC} 1 is invariant under the consensus part of
// the dynamics, so it can be read before the rows have equalized.
Vector scc_shares(const Matrix& P, const ProductConversionGraph& pcg, const Vector& w_mixing) {
  Vector shares(pcg.num_sccs());
  for (int l = 0; l < pcg.num_sccs(); ++l) {
    double total = 0.0;
    for (int i = 0; i < static_cast<int>(P.rows()); ++i) {
      double row_mass = 0.0;
      for (int r : pcg.sccs[l]) row_mass += P(i, r);
      total += w_mixing[i] * row_mass;
    }
    shares[l] = total;
  }
  return shares;
}

Matrix limit_from_shares(const ProductConversionGraph& pcg, int n, const Vector& shares,
                         const std::vector<Vector>& scc_eigvecs) {
  Matrix limit = Matrix::Zero(n, pcg.products);
  for (int l = 0; l < pcg.num_sccs(); ++l) {
    const auto& comp = pcg.sccs[l];
    for (std::size_t b = 0; b < comp.size(); ++b) {
      limit.col(comp[b]).setConstant(shares[l] * scc_eigvecs[l][static_cast<int>(b)]);
    }
  }
  return limit;
}

double transient_mass(const Matrix& P, const ProductConversionGraph& pcg) {
  double worst = 0.0;
  for (int i = 0; i < static_cast<int>(P.rows()); ++i) {
    double mass = 0.0;
    for (int r : pcg.transient) mass += P(i, r);
    worst = std::max(worst, mass);
  }
  return worst;
}

}  // namespace

AsymptoticPrediction predict_asymptotics(const SocialNetwork& net, const OpenMindedness& alpha,
                                         const ProductConversionGraph& pcg, const Matrix& P0) {
  require_theorem_assumptions(pcg);
  const Matrix p0 = checked_probability_matrix(P0, ErrorCode::InvalidInitialDistribution);
  if (p0.rows() != net.n || p0.cols() != pcg.products) {
    fail(ErrorCode::DimensionMismatch, "P0 must be n x R");
  }

  AsymptoticPrediction out;
  out.case_label = pcg.case_label;

  std::vector<Vector> scc_eigvecs;
  scc_eigvecs.reserve(pcg.sccs.size());
  for (const auto& block : pcg.scc_blocks) scc_eigvecs.push_back(dominant_left_eigenvector(block));

  switch (pcg.case_label) {
    case DeltaCase::Case1: {
      out.limit = Vector::Ones(net.n) * scc_eigvecs[0].transpose();
      out.rate = contraction_constants(pcg, alpha).epsilon;
      break;
    }
    case DeltaCase::Case2: {
      out.limit = limit_from_shares(pcg, net.n, Vector::Ones(1), scc_eigvecs);
      break;
    }
    case DeltaCase::Case3: {
      const Vector w_mixing = dominant_left_eigenvector(mixing_matrix(net, alpha));
      const Vector shares = scc_shares(p0, pcg, w_mixing);
      out.limit = limit_from_shares(pcg, net.n, shares, scc_eigvecs);
      out.gammas = shares;
      out.gamma_provenance = GammaProvenance::ClosedForm;
      break;
    }
    case DeltaCase::Case4: {
      // No closed form: run the mean-field iteration until the transient
      // mass is exhausted, then read the shares off the iterate.
      const Vector w_mixing = dominant_left_eigenvector(mixing_matrix(net, alpha));
      Matrix P = p0;
      constexpr std::size_t kMaxSteps = 1'000'000;
      constexpr double kTransientCutoff = 1e-12;
      std::size_t step = 0;
      while (transient_mass(P, pcg) >= kTransientCutoff) {
        if (step++ >= kMaxSteps) {
          fail(ErrorCode::NotConverged,
               "transient mass still " + std::to_string(transient_mass(P, pcg)) +
                   " after 1e6 steps");
        }
        P = social_self_map(net, alpha, pcg, P);
      }
      out.iterations_used = step;
      const Vector shares = scc_shares(P, pcg, w_mixing);
      out.limit = limit_from_shares(pcg, net.n, shares, scc_eigvecs);
      out.gammas = shares;
      out.gamma_provenance = GammaProvenance::Simulated;
      break;
    }
  }
  return out;
}

FixedPointBounds fixed_point_bounds(const TwoProductParams& params, const OpenMindedness& alpha) {
  params.require_order();
  FixedPointBounds out;
  out.lower = 0.5;
  out.upper = params.delta12 / (params.delta12 + params.delta21);
  const auto& a = alpha.alpha.array();
  out.node_gap_bound = ((1.0 - a / 2.0) / a * (params.delta22 - params.delta11) /
                        (params.delta22 + params.delta11))
                           .matrix();
  return out;
}

Matrix two_product_jacobian(const SocialNetwork& net, const OpenMindedness& alpha,
                            const TwoProductParams& params, const Vector& p) {
  if (p.size() != net.n || alpha.alpha.size() != net.n) {
    fail(ErrorCode::DimensionMismatch, "p and alpha must have one entry per node");
  }
  const Vector social = net.normalized * p;
  Matrix j = params.delta11 * alpha.alpha.asDiagonal() * net.normalized;
  j.noalias() += (params.delta22 - params.delta11) *
                 (alpha.alpha.cwiseProduct(p)).asDiagonal() * net.normalized;
  j.diagonal().array() += 1.0 - params.delta12 - params.delta21;
  j.diagonal().array() -= params.delta22 * alpha.alpha.array();
  j.diagonal().array() +=
      (params.delta22 - params.delta11) * (alpha.alpha.cwiseProduct(social)).array();
  return j;
}

double spectral_radius(const Matrix& m, int dense_limit) {
  if (m.rows() != m.cols()) fail(ErrorCode::DimensionMismatch, "matrix must be square");
  if (m.rows() <= dense_limit) {
    Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }
  // Large instances: power iteration on |M| bounds rho(M) from above.
  const Matrix abs_m = m.cwiseAbs();
  Vector v = Vector::Ones(m.rows());
  v /= v.norm();
  double estimate = 0.0;
  for (int k = 0; k < 100'000; ++k) {
    Vector next = abs_m * v;
    const double norm = next.norm();
    if (norm == 0.0) return 0.0;
    next /= norm;
    if (std::abs(norm - estimate) <= 1e-12 * std::max(1.0, norm)) return norm;
    estimate = norm;
    v = std::move(next);
  }
  return estimate;
}

StabilityReport check_stability(const SocialNetwork& net, const OpenMindedness& alpha,
                                const TwoProductParams& params, const Vector& p_star) {
  params.require_order();
  StabilityReport report;
  const double d11 = params.delta11;
  const double d22 = params.delta22;
  report.local_threshold = 8.0 * d11 * d22 / ((d22 - d11) * (d22 - d11) + 8.0 * d11 * d22);
  report.global_threshold = (d22 + d11) / (3.0 * d22 - d11);

  report.local_sufficient.resize(net.n);
  report.global_sufficient.resize(net.n);
  for (int i = 0; i < net.n; ++i) {
    report.local_sufficient[i] = alpha.alpha[i] < report.local_threshold;
    report.global_sufficient[i] = alpha.alpha[i] < report.global_threshold;
  }

  const Matrix j = two_product_jacobian(net, alpha, params, p_star);
  if (net.n <= 2000) {
    Eigen::EigenSolver<Matrix> solver(j, /*computeEigenvectors=*/false);
    report.jacobian_spectral_radius = solver.eigenvalues().cwiseAbs().maxCoeff();
    report.jacobian_max_imag = solver.eigenvalues().imag().cwiseAbs().maxCoeff();
  } else {
    report.jacobian_spectral_radius = spectral_radius(j);
    report.jacobian_max_imag = 0.0;
  }

  const Vector moduli = two_product_contraction_moduli(params, alpha);
  double bound = 0.0;
  for (int i = 0; i < net.n; ++i) {
    const double k_i = params.delta12 + params.delta21 + params.delta22 * alpha.alpha[i];
    bound = std::max(bound, std::max(moduli[i], k_i * moduli[i] + k_i - 1.0));
  }
  report.global_rate_bound = bound;
  return report;
}

}  // namespace netprop
