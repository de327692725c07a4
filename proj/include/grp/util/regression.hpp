#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace grp {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = intercept + slope * x. Needs >= 2 distinct x.
LinearFit fit_line(std::span<const double> xs, std::span<const double> ys);

struct MultiFit {
  Eigen::VectorXd coefficients;
  double r_squared = 0.0;
  bool full_rank = true;
};

/// Least squares y = X beta via column-pivoting QR.
MultiFit least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y);

}  // namespace grp
