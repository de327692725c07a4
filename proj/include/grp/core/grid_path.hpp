#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "grp/core/time_grid.hpp"

namespace grp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Copies a row-major buffer into an Eigen matrix.
inline Matrix row_major_matrix(std::span<const double> data, std::size_t rows, std::size_t cols) {
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data[r * cols + c];
  return m;
}

/// A d-dimensional path sampled on a uniform grid.
///
/// Values are stored point-major: entry c of point k lives at k * dim + c.
/// Multi-index values (linear maps, tensors) are flattened row-major by the
/// caller; the path itself only knows the flat dimension.
class GridPath {
 public:
  GridPath(TimeGrid grid, std::size_t dim, std::vector<double> values);

  static GridPath zeros(TimeGrid grid, std::size_t dim);
  static GridPath constant(TimeGrid grid, std::span<const double> value);
  /// Samples f(t_k) into each point.
  static GridPath sample(TimeGrid grid, std::size_t dim,
                         const std::function<void(double, std::span<double>)>& f);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t n_points() const noexcept { return grid_.n_points(); }

  std::span<const double> at(std::size_t k) const {
    return {values_.data() + k * dim_, dim_};
  }
  double operator()(std::size_t k, std::size_t c) const { return values_[k * dim_ + c]; }
  std::span<const double> data() const noexcept { return values_; }

  /// X_{i,j} = X_j - X_i written into out (size dim).
  void increment(std::size_t i, std::size_t j, std::span<double> out) const;
  Vector increment(std::size_t i, std::size_t j) const;

  /// max_k |X_k| (Euclidean).
  double sup_norm() const;

  /// a * this + b * other, on the same grid and dimension.
  GridPath combine(double a, const GridPath& other, double b) const;

  friend bool operator==(const GridPath&, const GridPath&) = default;

 private:
  TimeGrid grid_;
  std::size_t dim_;
  std::vector<double> values_;
};

}  // namespace grp
