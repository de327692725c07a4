#include "grp/core/controlled_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grp/core/norms.hpp"

namespace grp {

ControlledPath::ControlledPath(GridPath y, GridPath y_prime, std::shared_ptr<const RoughPath> base,
                               std::size_t out_dim)
    : y_(std::move(y)), y_prime_(std::move(y_prime)), base_(std::move(base)), out_dim_(out_dim) {
  if (!base_) throw std::invalid_argument("ControlledPath: missing base rough path");
  const std::size_t d = base_->dim();
  if (out_dim_ == 0) throw std::invalid_argument("ControlledPath: output dimension must be >= 1");
  if (!(y_.grid() == base_->grid()) || !(y_prime_.grid() == base_->grid()))
    throw std::invalid_argument("ControlledPath: grid differs from the base path");
  if (y_.dim() != out_dim_ * d)
    throw std::invalid_argument("ControlledPath: dimension mismatch, Y must have n*d components");
  if (y_prime_.dim() != out_dim_ * d * d)
    throw std::invalid_argument("ControlledPath: dimension mismatch, Y' must have n*d*d components");
}

ControlledPath ControlledPath::combine(double a, const ControlledPath& other, double b) const {
  if (other.base_ != base_ && !(other.base_->path() == base_->path()))
    throw std::invalid_argument("ControlledPath::combine: different base paths");
  if (other.out_dim_ != out_dim_) throw std::invalid_argument("ControlledPath::combine: dimension mismatch");
  return ControlledPath(y_.combine(a, other.y_, b), y_prime_.combine(a, other.y_prime_, b), base_, out_dim_);
}

ControlledPath ControlledPath::scaled(double factor) const { return combine(factor, *this, 0.0); }

namespace {

// Frobenius norm of R_{i,j}, written without allocation for the pair scans.
double remainder_frobenius(const ControlledPath& cp, std::size_t i, std::size_t j, std::vector<double>& dx) {
  const std::size_t n = cp.out_dim();
  const std::size_t d = cp.base_dim();
  cp.base().path().increment(i, j, dx);
  const auto yi = cp.y().at(i);
  const auto yj = cp.y().at(j);
  const auto ypi = cp.y_prime().at(i);
  double s = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < d; ++c) {
      const std::size_t ac = a * d + c;
      double r = yj[ac] - yi[ac];
      for (std::size_t e = 0; e < d; ++e) r -= ypi[ac * d + e] * dx[e];
      s += r * r;
    }
  return std::sqrt(s);
}

}  // namespace

Matrix remainder(const ControlledPath& cp, std::size_t i, std::size_t j) {
  if (i >= j) throw std::invalid_argument("remainder: empty interval (need i < j)");
  if (j > cp.grid().n_steps()) throw std::out_of_range("remainder: index beyond grid");
  const std::size_t n = cp.out_dim();
  const std::size_t d = cp.base_dim();
  std::vector<double> dx(d);
  cp.base().path().increment(i, j, dx);
  const auto yi = cp.y().at(i);
  const auto yj = cp.y().at(j);
  const auto ypi = cp.y_prime().at(i);
  Matrix r(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < d; ++c) {
      const std::size_t ac = a * d + c;
      double v = yj[ac] - yi[ac];
      for (std::size_t e = 0; e < d; ++e) v -= ypi[ac * d + e] * dx[e];
      r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c)) = v;
    }
  return r;
}

double remainder_norm(const ControlledPath& cp, double alpha) {
  detail::check_alpha(alpha);
  const std::size_t n = cp.grid().n_steps();
  const auto inv = detail::inverse_lag_powers(cp.grid(), 2.0 * alpha);
  std::vector<double> dx(cp.base_dim());
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      best = std::max(best, remainder_frobenius(cp, i, j, dx) * inv[j - i]);
  return best;
}

double controlled_seminorm(const ControlledPath& cp, double alpha) {
  return hoelder_norm(cp.y_prime(), alpha) + remainder_norm(cp, alpha);
}

}  // namespace grp
