#pragma once

#include <Eigen/Dense>

#include <string>

#include "netprop/errors.hpp"

namespace netprop {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Induced infinity norm: maximum absolute row sum. For column vectors this
/// coincides with the max-abs entry. All contraction estimates in this
/// library are taken in this norm.
template <typename Derived>
double inf_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

inline bool is_row_stochastic(const Matrix& m, double tol = 1e-12) {
  if (m.minCoeff() < 0.0) return false;
  return (m.rowwise().sum().array() - 1.0).abs().maxCoeff() <= tol;
}

/// Row-normalization policy for user-supplied stochastic matrices:
/// rows summing to 1 within 1e-12 are kept bit-exact, rows within
/// `renorm_tol` (default 1e-9) are rescaled, anything worse raises
/// `code`. Entries below -1e-15 raise NegativeEntry; tiny negatives
/// are snapped to zero.
Matrix checked_row_stochastic(Matrix m, ErrorCode code = ErrorCode::NotRowStochastic,
                              double renorm_tol = 1e-9);

/// Snaps entries within 1e-15 of [0,1] onto the interval; larger excursions
/// raise InvariantViolated (they indicate a genuine bug, not rounding).
template <typename Derived>
void clamp_unit_interval(Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (v < 0.0) {
        if (v < -1e-15) {
          fail(ErrorCode::InvariantViolated,
               "probability entry " + std::to_string(v) + " below 0 beyond rounding");
        }
        m(i, j) = 0.0;
      } else if (v > 1.0) {
        if (v > 1.0 + 1e-15) {
          fail(ErrorCode::InvariantViolated,
               "probability entry " + std::to_string(v) + " above 1 beyond rounding");
        }
        m(i, j) = 1.0;
      }
    }
  }
}

}  // namespace netprop
