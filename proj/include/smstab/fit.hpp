#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <stdexcept>

namespace smstab {

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("log-log fit needs at least two (x, y) pairs");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("log-log fit needs strictly positive data");
    design(i, 0) = 1.0;
    design(i, 1) = std::log(x[i]);
    rhs[i] = std::log(y[i]);
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  return coef[1];
}

}  // namespace smstab
