#include "netprop/linalg.hpp"

#include <cmath>
#include <string>

namespace netprop {

Matrix checked_row_stochastic(Matrix m, ErrorCode code, double renorm_tol) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (v < 0.0) {
        if (v < -1e-15) {
          fail(ErrorCode::NegativeEntry, "entry (" + std::to_string(i) + "," +
                                             std::to_string(j) + ") = " + std::to_string(v));
        }
        m(i, j) = 0.0;
      }
    }
    const double sum = m.row(i).sum();
    const double err = std::abs(sum - 1.0);
    if (err <= 1e-12) continue;
    if (err <= renorm_tol) {
      m.row(i) /= sum;
    } else {
      fail(code, "row " + std::to_string(i) + " sums to " + std::to_string(sum));
    }
  }
  return m;
}

}  // namespace netprop
