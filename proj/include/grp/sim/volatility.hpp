#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "grp/core/grid_path.hpp"
#include "grp/core/time_grid.hpp"

namespace grp::sim {

/// Volatility uncertainty [sigma_low, sigma_high]. In dimension d > 1 the
/// admissible volatility matrices are the user-supplied `gamma_set`; G is then
/// G(A) = 1/2 max_{gamma in gamma_set} tr(A gamma gamma^T).
struct VolatilityBand {
  double sigma_low = 1.0;
  double sigma_high = 1.0;
  std::size_t control_levels = 2;
  std::size_t dim = 1;
  std::vector<Matrix> gamma_set;

  static VolatilityBand scalar(double sigma_low, double sigma_high, std::size_t control_levels = 2);
  /// gamma_set = { sigma * I : sigma on the scalar lattice }.
  static VolatilityBand isotropic(double sigma_low, double sigma_high, std::size_t dim,
                                  std::size_t control_levels = 2);

  /// Throws std::invalid_argument unless 0 < sigma_low <= sigma_high < inf and
  /// the gamma set (d > 1) is non-empty with d x d entries.
  void validate() const;
  bool degenerate() const noexcept { return sigma_low == sigma_high; }

  /// control_levels equally spaced values in [sigma_low, sigma_high].
  std::vector<double> lattice() const;
};

enum class ControlKind { constant, piecewise_constant, feedback_bang_bang };

const char* to_string(ControlKind kind) noexcept;
ControlKind control_kind_from_string(const std::string& name);

/// Convexity signal for bang-bang feedback: true selects the largest
/// volatility, false the smallest.
using ConvexityIndicator = std::function<bool(double t, std::span<const double> state)>;

/// Per-step volatility a_k (scalars for d = 1, row-major d x d matrices otherwise).
class ControlPath {
 public:
  ControlPath(TimeGrid grid, VolatilityBand band, std::vector<double> a_values, ControlKind kind,
              ConvexityIndicator indicator = {});

  const TimeGrid& grid() const noexcept { return grid_; }
  const VolatilityBand& band() const noexcept { return band_; }
  std::size_t dim() const noexcept { return band_.dim; }
  ControlKind kind() const noexcept { return kind_; }
  const ConvexityIndicator& indicator() const noexcept { return indicator_; }

  std::span<const double> at(std::size_t step) const {
    const std::size_t dd = band_.dim * band_.dim;
    return {a_values_.data() + step * dd, dd};
  }
  std::span<const double> values() const noexcept { return a_values_; }

 private:
  TimeGrid grid_;
  VolatilityBand band_;
  std::vector<double> a_values_;
  ControlKind kind_;
  ConvexityIndicator indicator_;
};

/// Draws a control from the restricted classes:
///  - constant: one admissible value (seeded choice) for every step;
///  - piecewise_constant: i.i.d. admissible values per step;
///  - feedback_bang_bang: max/min volatility by the indicator. The stored
///    values are the indicator read along the zero state; sample_gbm_path
///    re-evaluates it on the simulated state and records what was used.
ControlPath sample_control(const VolatilityBand& band, ControlKind kind, const TimeGrid& grid, std::uint64_t seed,
                           const ConvexityIndicator& indicator = {}, std::uint64_t path_index = 0);

/// Scalar constant control a = sigma (d = 1) or a = gamma_set[index] (d > 1).
ControlPath constant_control(const VolatilityBand& band, const TimeGrid& grid, double sigma);
ControlPath constant_control_matrix(const VolatilityBand& band, const TimeGrid& grid, std::size_t gamma_index);

/// Largest / smallest admissible volatility by tr(gamma gamma^T) (scalars for d = 1).
std::vector<double> extreme_volatility(const VolatilityBand& band, bool largest);

}  // namespace grp::sim
