#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "grp/core/controlled_path.hpp"
#include "grp/core/rough_path.hpp"
#include "grp/integral/partition.hpp"

namespace grp::integral {

struct IntegralReport {
  /// n-vector sum of the terms.
  Vector value;
  /// One n-vector per partition interval: Y_s X_{s,t} + Y'_s XX_{s,t}.
  std::vector<Vector> terms;
  /// max over intervals of |term - compensated sum over the base steps inside it|.
  double max_local_error = 0.0;
  std::optional<double> fitted_K;
};

/// Compensated Riemann sum of (Y, Y') against rp over the partition. rp must
/// share the grid and dimension of cp's base (it may carry a different lift).
IntegralReport gubinelli_integral(const ControlledPath& cp, const RoughPath& rp, const Partition& part);
inline IntegralReport gubinelli_integral(const ControlledPath& cp, const Partition& part) {
  return gubinelli_integral(cp, cp.base(), part);
}

/// F : R^d -> L(R^d, R^n) with Jacobian DF.
/// value writes n*d entries (row-major n x d), derivative n*d*d entries with
/// derivative[(a*d + c)*d + e] = dF[a][c] / dx^e.
struct SmoothMap {
  std::size_t in_dim = 1;
  std::size_t out_dim = 1;
  std::function<void(std::span<const double>, std::span<double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> derivative;

  /// F(x) = x read as the linear functional v -> <x, v> (n = 1).
  static SmoothMap identity(std::size_t dim);
  /// Scalar f with derivative df (d = n = 1).
  static SmoothMap scalar(std::function<double(double)> f, std::function<double(double)> df);
  static SmoothMap square();
  static SmoothMap constant(double c);
};

/// (Y, Y') = (F(X), DF(X)) along the level-1 path of rp.
ControlledPath controlled_lift_smooth(const SmoothMap& f, std::shared_ptr<const RoughPath> rp);

struct LocalErrorReport {
  /// sup over grid pairs of |I_{s,t} - Y_s X_{s,t} - Y'_s XX_{s,t}| / (D (t-s)^{3 alpha}).
  double k_hat = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  double max_numerator = 0.0;
  /// D = ||X||_alpha ||R||_{2 alpha} + ||XX||_{2 alpha} ||Y'||_alpha.
  double denominator = 0.0;
};

/// I_{s,t} is the compensated sum over base steps. Numerators below
/// 1e-12 times the magnitude of the summed terms count as zero.
LocalErrorReport local_error_check(const ControlledPath& cp, const RoughPath& rp, double alpha);

struct EquivalenceReport {
  /// Base-grid left-point sum sum_k Y_k X_{k,k+1}.
  Vector ito_sum;
  std::vector<double> meshes;
  std::vector<double> differences;
  /// Slope of log difference against log mesh over the strictly positive
  /// differences (needs at least 3).
  std::optional<double> fitted_order;
};

/// |gubinelli_integral(part) - base Ito sum| along each partition; rp must be an Ito lift.
EquivalenceReport ito_vs_rough_equivalence(const ControlledPath& cp, const RoughPath& rp,
                                           std::span<const Partition> partitions);

/// Dyadic partitions of levels 0..max where 2^max divides n_steps.
std::vector<Partition> dyadic_sequence(const TimeGrid& grid);

}  // namespace grp::integral
