#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "grp/gexp/expectation.hpp"
#include "grp/sim/volatility.hpp"

namespace grp::gexp {

struct FamilyMember {
  std::string label;
  sim::ControlKind kind = sim::ControlKind::constant;
  /// Used by constant members: scalar sigma (d = 1) or gamma index (d > 1).
  double sigma = 1.0;
  std::size_t gamma_index = 0;
  sim::ConvexityIndicator indicator;
};

using ControlFamily = std::vector<FamilyMember>;

/// Every lattice value as a constant control (every gamma for d > 1).
ControlFamily constant_lattice_family(const sim::VolatilityBand& band);
/// {constant sigma_low, constant sigma_high, feedback by `indicator`} for d = 1.
ControlFamily bang_bang_family(const sim::VolatilityBand& band, sim::ConvexityIndicator indicator);
/// Indicator reading the sign of the payoff's centred second difference at
/// the current state (step `delta`).
sim::ConvexityIndicator payoff_convexity(Payoff phi, double delta = 0.05);

struct McParams {
  std::size_t n_paths = 10000;
  std::size_t n_steps = 64;
  double t_final = 1.0;
  std::uint64_t seed = 1;
};

/// max over the family of the sample mean of phi(B_T), all members driven by
/// the same Wiener increments. The result is a lower bound of E^ over
/// unrestricted controls. Throws "insufficient sample" for fewer than 100 paths.
ExpectationEstimate mc_upper_expectation(const Payoff& phi, const sim::VolatilityBand& band,
                                         const ControlFamily& family, const McParams& params);
ExpectationEstimate mc_upper_expectation(const VectorPayoff& phi, const sim::VolatilityBand& band,
                                         const ControlFamily& family, const McParams& params);

ExpectationEstimate mc_lower_expectation(const Payoff& phi, const sim::VolatilityBand& band,
                                         const ControlFamily& family, const McParams& params);

}  // namespace grp::gexp
