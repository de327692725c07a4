#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "grp/core/time_grid.hpp"

namespace grp::integral {

/// Strictly increasing grid indices. The first and last index delimit the
/// integration interval, which need not be the whole grid.
class Partition {
 public:
  Partition(const TimeGrid& grid, std::vector<std::size_t> indices);

  /// Every stride-th grid point from 0, plus n_steps.
  static Partition strided(const TimeGrid& grid, std::size_t stride);
  /// 2^level equal intervals; n_steps must be divisible by 2^level.
  static Partition dyadic(const TimeGrid& grid, unsigned level);
  /// Endpoints plus `interior` distinct uniformly drawn interior points.
  static Partition random(const TimeGrid& grid, std::size_t interior, std::uint64_t seed);
  /// Times must sit on grid points (relative tolerance 1e-9 of a step).
  static Partition from_times(const TimeGrid& grid, std::span<const double> times);
  /// The base grid restricted to [first, last].
  static Partition base(const TimeGrid& grid, std::size_t first, std::size_t last);
  static Partition base(const TimeGrid& grid) { return base(grid, 0, grid.n_steps()); }

  const TimeGrid& grid() const noexcept { return grid_; }
  std::span<const std::size_t> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::size_t first() const noexcept { return indices_.front(); }
  std::size_t last() const noexcept { return indices_.back(); }
  /// Largest interval length in time units.
  double mesh() const noexcept;

 private:
  TimeGrid grid_;
  std::vector<std::size_t> indices_;
};

}  // namespace grp::integral
