#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "grp/core/grid_path.hpp"
#include "grp/integral/partition.hpp"

namespace grp::stoch {

/// Integrand dimension check: y.dim() must be n * b.dim(); y is read as
/// L(R^d, R^n) row-major. Throws "grid mismatch" when grids differ.
std::size_t integrand_rows(const GridPath& y, const GridPath& b);

/// Cumulative left-point sums sum_{k<m} y_k Delta b_k (n-dimensional).
GridPath ito_integral(const GridPath& y, const GridPath& b);

/// <Y, B>_{t_m} = sum_{k<m} Delta y_k (x) Delta b_k, stored as y.dim() x d blocks.
class CrossVariationPath {
 public:
  CrossVariationPath(TimeGrid grid, std::size_t rows, std::size_t cols, std::vector<double> values);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> at(std::size_t k) const {
    return {values_.data() + k * rows_ * cols_, rows_ * cols_};
  }
  Matrix value(std::size_t k) const;

  /// sum_c <Y[a][c], B^c> for Y read as L(R^d, R^n): an n-dimensional path.
  GridPath contracted() const;

 private:
  TimeGrid grid_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

CrossVariationPath cross_variation(const GridPath& y, const GridPath& b);

/// ito_integral + 1/2 contracted cross variation.
GridPath stratonovich_integral(const GridPath& y, const GridPath& b);

/// sum over the partition of 1/2 (y_u + y_v) b_{u,v} (n-dimensional).
Vector midpoint_sum(const GridPath& y, const GridPath& b, const integral::Partition& part);

struct MidpointReport {
  /// Base-grid Stratonovich value at the terminal point.
  Vector stratonovich_value;
  std::vector<double> meshes;
  std::vector<double> gaps;
  /// Slope of log gap against log mesh over gaps above 1e-13 (needs >= 3).
  std::optional<double> fitted_order;
};

MidpointReport midpoint_convergence(const GridPath& y, const GridPath& b,
                                    std::span<const integral::Partition> partitions);

/// sum over the partition of y_{u,v} b_{u,v}, summed over matching coordinates
/// (cross variation read off a coarse partition).
Matrix coarse_cross_variation(const GridPath& y, const GridPath& b, const integral::Partition& part);

}  // namespace grp::stoch
