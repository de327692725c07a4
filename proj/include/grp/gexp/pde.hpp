#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "grp/gexp/expectation.hpp"

namespace grp::gexp {

struct GHeatProblem {
  Payoff phi;
  sim::VolatilityBand band;
  double t_final = 1.0;
  /// Odd, so that x = 0 is a grid point.
  std::size_t nx = 801;
  /// Half-width of the domain; default 8 sigma_high sqrt(t_final).
  std::optional<double> half_width;
  /// Default dx^2 / (2 sigma_high^2), half the stability limit.
  std::optional<double> dt;
};

struct GHeatSolution {
  std::vector<double> x;
  /// u(t_final, x).
  std::vector<double> u;
  /// u(t_final, 0).
  double value;
  double dx;
  double dt;
  std::size_t n_time_steps;
};

/// Explicit scheme u^{m+1}_i = u^m_i + dt G((u_{i+1} - 2u_i + u_{i-1}) / dx^2)
/// with u held at phi(+-L) on the boundary. The step actually used is
/// t_final / ceil(t_final / dt) <= dt.
/// Throws std::invalid_argument("unstable configuration") when
/// dt > dx^2 / sigma_high^2 and NumericalError on non-finite values.
GHeatSolution solve_g_heat(const GHeatProblem& problem);

ExpectationEstimate pde_upper_expectation(const GHeatProblem& problem);
/// -E^[-phi] through the same solver.
ExpectationEstimate pde_lower_expectation(const GHeatProblem& problem);

/// Payoff of (B_{t1}, B_{t2} - B_{t1}).
using Payoff2 = std::function<double(double, double)>;

struct MultiTimeParams {
  double t1 = 0.5;
  double t2 = 1.0;
  /// Points of the x1 lattice on which inner problems are solved.
  std::size_t lattice_points = 161;
  std::size_t nx = 801;
  /// Linear interpolation error bound (max |second difference| / 8) above
  /// interpolation_tolerance * (1 + max |v|) raises a warning.
  double interpolation_tolerance = 1e-3;
};

/// Nested evaluation: v(x1) = E^[phi2(x1, B_{t2 - t1})] on a lattice, then
/// E^[v(B_{t1})] with v linearly interpolated (and held constant beyond the lattice).
ExpectationEstimate multi_time_expectation(const Payoff2& phi2, const sim::VolatilityBand& band,
                                           const MultiTimeParams& params);

}  // namespace grp::gexp
