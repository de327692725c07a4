#include "grp/core/grid_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace grp {

GridPath::GridPath(TimeGrid grid, std::size_t dim, std::vector<double> values)
    : grid_(grid), dim_(dim), values_(std::move(values)) {
  if (dim_ == 0) throw std::invalid_argument("GridPath: dimension must be >= 1");
  if (values_.size() != grid_.n_points() * dim_)
    throw std::invalid_argument("GridPath: expected " + std::to_string(grid_.n_points() * dim_) +
                                " values, got " + std::to_string(values_.size()));
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); }))
    throw std::invalid_argument("GridPath: non-finite entry");
}

GridPath GridPath::zeros(TimeGrid grid, std::size_t dim) {
  return GridPath(grid, dim, std::vector<double>(grid.n_points() * dim, 0.0));
}

GridPath GridPath::constant(TimeGrid grid, std::span<const double> value) {
  std::vector<double> v;
  v.reserve(grid.n_points() * value.size());
  for (std::size_t k = 0; k < grid.n_points(); ++k) v.insert(v.end(), value.begin(), value.end());
  return GridPath(grid, value.size(), std::move(v));
}

GridPath GridPath::sample(TimeGrid grid, std::size_t dim,
                          const std::function<void(double, std::span<double>)>& f) {
  std::vector<double> v(grid.n_points() * dim);
  for (std::size_t k = 0; k < grid.n_points(); ++k)
    f(grid.time(k), std::span<double>(v.data() + k * dim, dim));
  return GridPath(grid, dim, std::move(v));
}

void GridPath::increment(std::size_t i, std::size_t j, std::span<double> out) const {
  const double* xi = values_.data() + i * dim_;
  const double* xj = values_.data() + j * dim_;
  for (std::size_t c = 0; c < dim_; ++c) out[c] = xj[c] - xi[c];
}

Vector GridPath::increment(std::size_t i, std::size_t j) const {
  Vector out(static_cast<Eigen::Index>(dim_));
  increment(i, j, std::span<double>(out.data(), dim_));
  return out;
}

double GridPath::sup_norm() const {
  double best = 0.0;
  for (std::size_t k = 0; k < n_points(); ++k) {
    double s = 0.0;
    for (double x : at(k)) s += x * x;
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

GridPath GridPath::combine(double a, const GridPath& other, double b) const {
  if (!(other.grid_ == grid_) || other.dim_ != dim_)
    throw std::invalid_argument("GridPath::combine: grid or dimension mismatch");
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * values_[i] + b * other.values_[i];
  return GridPath(grid_, dim_, std::move(v));
}

}  // namespace grp
