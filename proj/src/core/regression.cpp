#include "grp/util/regression.hpp"

#include <stdexcept>

namespace grp {

namespace {

double r_squared_of(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted) {
  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = (y - fitted).squaredNorm();
  if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

}  // namespace

LinearFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("fit_line: size mismatch");
  if (xs.size() < 2) throw std::invalid_argument("fit_line: need at least two points");
  Eigen::MatrixXd design(static_cast<Eigen::Index>(xs.size()), 2);
  Eigen::VectorXd y(static_cast<Eigen::Index>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    design(static_cast<Eigen::Index>(i), 0) = 1.0;
    design(static_cast<Eigen::Index>(i), 1) = xs[i];
    y(static_cast<Eigen::Index>(i)) = ys[i];
  }
  const MultiFit f = least_squares(design, y);
  if (!f.full_rank) throw std::invalid_argument("fit_line: x values are all equal");
  return {f.coefficients(1), f.coefficients(0), f.r_squared};
}

MultiFit least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  MultiFit out;
  out.full_rank = qr.rank() == design.cols();
  out.coefficients = qr.solve(y);
  out.r_squared = r_squared_of(y, design * out.coefficients);
  return out;
}

}  // namespace grp
