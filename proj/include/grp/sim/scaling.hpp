#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "grp/core/time_grid.hpp"
#include "grp/sim/volatility.hpp"

namespace grp::sim {

struct ScalingParams {
  int q = 2;
  /// 1: |B_{s,s+tau}|^q, 2: |BB_{s,s+tau}|^q (Frobenius).
  int level = 1;
  std::size_t n_paths = 200;
  std::vector<std::size_t> lags{32, 64, 128, 256, 512};
  TimeGrid grid{1.0, 4096};
  ControlKind kind = ControlKind::piecewise_constant;
  std::uint64_t seed = 1;
};

struct ScalingReport {
  std::vector<double> taus;
  std::vector<double> moments;
  double slope;
  double intercept;
  double r_squared;
  /// q/2 for level 1, q for level 2.
  double expected_slope;
};

/// Mean over paths and non-overlapping windows of the q-th moment at each lag,
/// regressed in log-log coordinates.
ScalingReport moment_scaling_check(const VolatilityBand& band, const ScalingParams& params);

}  // namespace grp::sim
