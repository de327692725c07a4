#pragma once

#include <cstddef>
#include <memory>

#include "grp/core/grid_path.hpp"
#include "grp/core/rough_path.hpp"

namespace grp {

/// A path Y with values in L(R^d, R^n) together with its Gubinelli
/// derivative Y' with values in L(R^d, L(R^d, R^n)).
///
/// Flat layouts per grid point:
///   Y [a][c]    at a*d + c          (n x d)
///   Y'[a][c][e] at (a*d + c)*d + e  (n x d x d), Y'[a][c][e] ~ dY[a][c]/dX^e
///
/// The controlled expansion is Y_{s,t}[a][c] ~ sum_e Y'_s[a][c][e] X^e_{s,t}.
class ControlledPath {
 public:
  ControlledPath(GridPath y, GridPath y_prime, std::shared_ptr<const RoughPath> base, std::size_t out_dim);

  std::size_t out_dim() const noexcept { return out_dim_; }
  std::size_t base_dim() const noexcept { return base_->dim(); }
  const GridPath& y() const noexcept { return y_; }
  const GridPath& y_prime() const noexcept { return y_prime_; }
  const RoughPath& base() const noexcept { return *base_; }
  const std::shared_ptr<const RoughPath>& base_ptr() const noexcept { return base_; }
  const TimeGrid& grid() const noexcept { return y_.grid(); }

  /// a * this + b * other (same base path).
  ControlledPath combine(double a, const ControlledPath& other, double b) const;
  ControlledPath scaled(double factor) const;

 private:
  GridPath y_;
  GridPath y_prime_;
  std::shared_ptr<const RoughPath> base_;
  std::size_t out_dim_;
};

/// R^Y_{i,j} = Y_{i,j} - Y'_i X_{i,j}, as an n x d matrix.
Matrix remainder(const ControlledPath& cp, std::size_t i, std::size_t j);

/// ||R^Y||_{2 alpha} over grid pairs.
double remainder_norm(const ControlledPath& cp, double alpha);

/// ||Y, Y'||_{X, 2 alpha} = ||Y'||_alpha + ||R^Y||_{2 alpha}.
double controlled_seminorm(const ControlledPath& cp, double alpha);

}  // namespace grp
