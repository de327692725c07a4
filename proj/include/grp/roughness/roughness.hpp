#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grp/core/grid_path.hpp"
#include "grp/sim/volatility.hpp"

namespace grp::roughness {

/// Unit directions for projecting a d-dimensional path: {1} for d = 1
/// (the sign does not change an oscillation), `size` equally spaced angles
/// for d = 2, a Fibonacci lattice for d = 3, seeded Gaussian directions above.
std::vector<Vector> direction_mesh(std::size_t dim, std::size_t size = 0);

struct RoughnessReport {
  double theta;
  unsigned n_max;
  /// min over levels 1..n_max, dyadic blocks and mesh directions of
  /// 2^{theta n} osc_block(a . X).
  double d_theta;
  /// 1/2 (2T)^{-theta} D_theta.
  double l_theta_lower;
  /// Per-level minimum of 2^{theta n} osc_block(a . X), n = 1..n_max.
  std::vector<double> level_minima;
  /// inf over grid points s, dyadic eps = T 2^{-n} (n = 1..n_max-1) and mesh
  /// directions of sup_{|t-s| <= eps} |a . X_{s,t}| / eps^theta. Always >= l_theta_lower.
  std::optional<double> direct_estimate;
  /// Least-squares slope of log2(level minimum) against n.
  double decay_slope;
};

/// Throws std::invalid_argument when n_max is 0 or 2^n_max does not divide
/// n_steps, and for theta outside (0, 1].
RoughnessReport dyadic_roughness(const GridPath& path, double theta, unsigned n_max,
                                 std::span<const Vector> directions = {}, bool direct = true);

/// Simulated volatility law used by the capacity approximations.
struct Law {
  std::string label;
  sim::ControlKind kind;
  double sigma;
};

/// {constant sigma_low, constant sigma_high, i.i.d. piecewise-constant} (constants
/// collapse for a degenerate band).
std::vector<Law> band_laws(const sim::VolatilityBand& band);

struct TailParams {
  double theta = 0.55;
  unsigned n_max = 10;
  std::size_t n_steps = 1u << 14;
  double horizon = 1.0;
  std::size_t n_seeds = 100;
  std::uint64_t seed = 1;
};

struct TailRow {
  double eps;
  /// max over laws and bands.
  double frequency;
  std::vector<double> per_law;
};

struct TailReport {
  std::vector<std::string> law_labels;
  std::vector<TailRow> rows;
  /// Observed range of l_theta_lower over all simulated paths.
  double min_l;
  double max_l;
  /// log frequency against eps^{-2} over rows with 0 < frequency < 1.
  std::optional<double> slope;
  std::optional<double> r_squared;
  std::size_t fitted_points;
};

/// Empirical capacity c^(L_theta < eps), approximated by the largest frequency
/// over the laws of each band. Throws on an empty eps grid or eps outside
/// (0, 1/(2 T^theta)).
TailReport roughness_tail_experiment(std::span<const sim::VolatilityBand> bands, std::span<const double> eps_grid,
                                     const TailParams& params);

struct ExponentialTailRow {
  double eps;
  double bound;
  std::vector<double> frequency;
  std::vector<double> standard_error;
  std::vector<bool> within;
};

struct ExponentialTailReport {
  std::vector<std::string> law_labels;
  std::vector<ExponentialTailRow> rows;
  bool pass;
  /// "law at eps" for every comparison that exceeds bound + 3 sqrt(p(1-p)/n).
  std::vector<std::string> violations;
};

/// Frequency of sup_t |B_t| >= 1/eps per law against d exp(-1/(eps^2 d T sigma_high^2)).
ExponentialTailReport exponential_tail_check(const sim::VolatilityBand& band, std::span<const double> eps_grid,
                                             const TailParams& params);

}  // namespace grp::roughness
