#include "grp/gexp/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>

#include "grp/sim/gbm.hpp"

namespace grp::gexp {

ControlFamily constant_lattice_family(const sim::VolatilityBand& band) {
  band.validate();
  ControlFamily family;
  if (band.dim == 1) {
    for (double s : band.lattice()) family.push_back({"constant sigma=" + std::to_string(s), sim::ControlKind::constant, s, 0, {}});
  } else {
    for (std::size_t g = 0; g < band.gamma_set.size(); ++g)
      family.push_back({"constant gamma[" + std::to_string(g) + "]", sim::ControlKind::constant, 0.0, g, {}});
  }
  return family;
}

ControlFamily bang_bang_family(const sim::VolatilityBand& band, sim::ConvexityIndicator indicator) {
  band.validate();
  if (band.dim != 1) throw std::invalid_argument("bang_bang_family: scalar bands only");
  if (!indicator) throw std::invalid_argument("bang_bang_family: missing convexity indicator");
  return {{"constant sigma_low", sim::ControlKind::constant, band.sigma_low, 0, {}},
          {"constant sigma_high", sim::ControlKind::constant, band.sigma_high, 0, {}},
          {"feedback", sim::ControlKind::feedback_bang_bang, 0.0, 0, std::move(indicator)}};
}

sim::ConvexityIndicator payoff_convexity(Payoff phi, double delta) {
  return [phi = std::move(phi), delta](double, std::span<const double> x) {
    return phi(x[0] + delta) - 2.0 * phi(x[0]) + phi(x[0] - delta) >= 0.0;
  };
}

ExpectationEstimate mc_upper_expectation(const VectorPayoff& phi, const sim::VolatilityBand& band,
                                         const ControlFamily& family, const McParams& params) {
  band.validate();
  if (family.empty()) throw std::invalid_argument("mc_upper_expectation: empty control family");
  if (params.n_paths < 100) throw std::invalid_argument("insufficient sample");
  const TimeGrid grid(params.t_final, params.n_steps);

  ExpectationEstimate best;
  best.method = Method::mc_sup;
  bool first = true;
  std::string chosen;
  for (const FamilyMember& member : family) {
    const sim::ControlPath control = [&] {
      switch (member.kind) {
        case sim::ControlKind::constant:
          return band.dim == 1 ? sim::constant_control(band, grid, member.sigma)
                               : sim::constant_control_matrix(band, grid, member.gamma_index);
        default:
          return sim::sample_control(band, member.kind, grid, params.seed, member.indicator);
      }
    }();
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t p = 0; p < params.n_paths; ++p) {
      // Piecewise members redraw their control per path; the Wiener stream is shared.
      const sim::SamplePath path =
          member.kind == sim::ControlKind::piecewise_constant
              ? sim::sample_gbm_path(sim::sample_control(band, member.kind, grid, params.seed, {}, p), params.seed, p)
              : sim::sample_gbm_path(control, params.seed, p);
      const double y = phi(path.b.at(grid.n_steps()));
      sum += y;
      sum2 += y * y;
    }
    const double n = static_cast<double>(params.n_paths);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0));
    const double ci = 1.96 * std::sqrt(var / n);
    best.diagnostics.set(member.label, mean);
    if (first || mean > best.value) {
      best.value = mean;
      best.ci_halfwidth = ci;
      chosen = member.label;
      first = false;
    }
  }
  best.diagnostics.note = "argmax: " + chosen + "; lower bound of the sup over all admissible controls";
  best.diagnostics.set("n_paths", static_cast<double>(params.n_paths));
  best.diagnostics.set("n_steps", static_cast<double>(params.n_steps));
  if (band.dim > 1) best.diagnostics.warnings.push_back("d > 1: Monte Carlo only, no PDE reference");
  return best;
}

ExpectationEstimate mc_upper_expectation(const Payoff& phi, const sim::VolatilityBand& band,
                                         const ControlFamily& family, const McParams& params) {
  if (band.dim != 1) throw std::invalid_argument("mc_upper_expectation: scalar payoff needs d = 1");
  return mc_upper_expectation(VectorPayoff([&phi](std::span<const double> x) { return phi(x[0]); }), band, family,
                              params);
}

ExpectationEstimate mc_lower_expectation(const Payoff& phi, const sim::VolatilityBand& band,
                                         const ControlFamily& family, const McParams& params) {
  return negate(mc_upper_expectation([&phi](double x) { return -phi(x); }, band, family, params));
}

}  // namespace grp::gexp
