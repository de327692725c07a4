#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "grp/core/grid_path.hpp"
#include "grp/core/rough_path.hpp"
#include "grp/sim/volatility.hpp"

namespace grp::sim {

/// One sample of B = int a dW under a single measure P^a.
struct SamplePath {
  GridPath b;
  /// Driving Wiener path W (W_0 = 0); its increments are the Delta w_k.
  GridPath w;
  /// Control actually used; feedback controls are resolved along b.
  ControlPath control;
  std::uint64_t seed;
};

/// b_{k+1} = b_k + a_k Delta w_k with Delta w_k ~ N(0, h I_d) drawn from the
/// Wiener stream of (seed, path_index). Bit-identical for identical inputs.
SamplePath sample_gbm_path(const ControlPath& control, std::uint64_t seed, std::uint64_t path_index = 0);

/// Realized covariation <B>_{t_k} = sum_{m<k} Delta B_m (x) Delta B_m.
class QuadraticVariationPath {
 public:
  QuadraticVariationPath(TimeGrid grid, std::size_t dim, std::vector<double> values);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::size_t dim() const noexcept { return dim_; }

  /// Row-major d x d value at grid point k.
  std::span<const double> at(std::size_t k) const {
    return {values_.data() + k * dim_ * dim_, dim_ * dim_};
  }
  /// <B>_{t_i, t_j}.
  Matrix increment(std::size_t i, std::size_t j) const;
  std::span<const double> data() const noexcept { return values_; }

 private:
  TimeGrid grid_;
  std::size_t dim_;
  std::vector<double> values_;
};

QuadraticVariationPath quadratic_variation(const GridPath& b);

/// Lift with zero per-step blocks: Chen reconstruction reproduces the
/// left-point sums sum_k B_{i,k} (x) B_{k,k+1}.
RoughPath ito_lift(const GridPath& b);

/// Adds 1/2 Delta<B>_k to every block of an Ito lift.
RoughPath stratonovich_lift(const RoughPath& ito, const QuadraticVariationPath& qv);

}  // namespace grp::sim
