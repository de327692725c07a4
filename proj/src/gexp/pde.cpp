#include "grp/gexp/pde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "grp/core/errors.hpp"

namespace grp::gexp {

namespace {

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

GHeatSolution solve_g_heat(const GHeatProblem& problem) {
  const auto& band = problem.band;
  band.validate();
  if (band.dim != 1) throw std::invalid_argument("solve_g_heat: only d = 1 is supported");
  if (!problem.phi) throw std::invalid_argument("solve_g_heat: missing payoff");
  if (!(problem.t_final >= 0.0) || !std::isfinite(problem.t_final))
    throw std::invalid_argument("solve_g_heat: t_final must be finite and >= 0");
  if (problem.nx < 3 || problem.nx % 2 == 0) throw std::invalid_argument("solve_g_heat: nx must be odd and >= 3");

  const double sh2 = band.sigma_high * band.sigma_high;
  const double sl2 = band.sigma_low * band.sigma_low;
  const double half = problem.half_width.value_or(8.0 * band.sigma_high * std::sqrt(problem.t_final));
  GHeatSolution sol;
  const std::size_t nx = problem.nx;
  const std::size_t mid = nx / 2;
  if (problem.t_final == 0.0 || half == 0.0) {
    sol.x.assign(1, 0.0);
    sol.u.assign(1, problem.phi(0.0));
    sol.value = sol.u[0];
    sol.dx = 0.0;
    sol.dt = 0.0;
    sol.n_time_steps = 0;
    return sol;
  }
  if (!(half > 0.0) || !std::isfinite(half)) throw std::invalid_argument("solve_g_heat: half_width must be positive");

  sol.dx = 2.0 * half / static_cast<double>(nx - 1);
  const double limit = sol.dx * sol.dx / sh2;
  const double requested = problem.dt.value_or(0.5 * limit);
  if (!(requested > 0.0)) throw std::invalid_argument("solve_g_heat: dt must be positive");
  if (requested > limit) throw std::invalid_argument("unstable configuration");
  sol.n_time_steps = static_cast<std::size_t>(std::ceil(problem.t_final / requested - 1e-12));
  sol.dt = problem.t_final / static_cast<double>(sol.n_time_steps);

  sol.x.resize(nx);
  std::vector<double> u(nx), next(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    sol.x[i] = (static_cast<double>(i) - static_cast<double>(mid)) * sol.dx;
    u[i] = problem.phi(sol.x[i]);
  }
  if (!all_finite(u)) throw NumericalError("solve_g_heat: payoff is not finite on the domain");
  next.front() = u.front();
  next.back() = u.back();
  const double up = 0.5 * sh2 * sol.dt / (sol.dx * sol.dx);
  const double down = 0.5 * sl2 * sol.dt / (sol.dx * sol.dx);
  for (std::size_t m = 0; m < sol.n_time_steps; ++m) {
    for (std::size_t i = 1; i + 1 < nx; ++i) {
      const double lap = u[i + 1] - 2.0 * u[i] + u[i - 1];
      next[i] = u[i] + (lap >= 0.0 ? up : down) * lap;
    }
    u.swap(next);
    if ((m & 255u) == 255u && !all_finite(u))
      throw NumericalError("solve_g_heat: non-finite value at step " + std::to_string(m + 1));
  }
  if (!all_finite(u)) throw NumericalError("solve_g_heat: non-finite value in the solution");
  sol.value = u[mid];
  sol.u = std::move(u);
  return sol;
}

ExpectationEstimate pde_upper_expectation(const GHeatProblem& problem) {
  const GHeatSolution sol = solve_g_heat(problem);
  ExpectationEstimate est;
  est.value = sol.value;
  est.method = Method::pde;
  est.diagnostics.set("nx", static_cast<double>(sol.x.size()));
  est.diagnostics.set("dx", sol.dx);
  est.diagnostics.set("dt", sol.dt);
  est.diagnostics.set("time_steps", static_cast<double>(sol.n_time_steps));
  est.diagnostics.set("half_width", sol.x.back());
  return est;
}

ExpectationEstimate pde_lower_expectation(const GHeatProblem& problem) {
  GHeatProblem negated = problem;
  negated.phi = [phi = problem.phi](double x) { return -phi(x); };
  return negate(pde_upper_expectation(negated));
}

ExpectationEstimate multi_time_expectation(const Payoff2& phi2, const sim::VolatilityBand& band,
                                           const MultiTimeParams& params) {
  band.validate();
  if (!phi2) throw std::invalid_argument("multi_time_expectation: missing payoff");
  if (!(params.t1 > 0.0) || !(params.t2 > params.t1))
    throw std::invalid_argument("multi_time_expectation: need 0 < t1 < t2");
  if (params.lattice_points < 3) throw std::invalid_argument("multi_time_expectation: lattice needs >= 3 points");

  const double outer_half = 8.0 * band.sigma_high * std::sqrt(params.t1);
  const std::size_t m = params.lattice_points;
  const double step = 2.0 * outer_half / static_cast<double>(m - 1);
  std::vector<double> lattice(m), v(m);
  for (std::size_t i = 0; i < m; ++i) {
    lattice[i] = -outer_half + step * static_cast<double>(i);
    GHeatProblem inner{[&, x1 = lattice[i]](double y) { return phi2(x1, y); }, band, params.t2 - params.t1, params.nx,
                       {}, {}};
    v[i] = solve_g_heat(inner).value;
  }

  double lipschitz = 0.0, curvature = 0.0, vmax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    vmax = std::max(vmax, std::abs(v[i]));
    if (i + 1 < m) lipschitz = std::max(lipschitz, std::abs(v[i + 1] - v[i]) / step);
    if (i > 0 && i + 1 < m) curvature = std::max(curvature, std::abs(v[i + 1] - 2.0 * v[i] + v[i - 1]));
  }
  const Payoff interpolated = [&](double x) {
    if (x <= lattice.front()) return v.front();
    if (x >= lattice.back()) return v.back();
    const double pos = (x - lattice.front()) / step;
    const auto i = std::min(m - 2, static_cast<std::size_t>(pos));
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * v[i] + w * v[i + 1];
  };
  ExpectationEstimate est = pde_upper_expectation(GHeatProblem{interpolated, band, params.t1, params.nx, outer_half, {}});
  est.diagnostics.set("lattice_points", static_cast<double>(m));
  est.diagnostics.set("lattice_spacing", step);
  est.diagnostics.set("lipschitz_estimate", lipschitz);
  est.diagnostics.set("interpolation_error_bound", curvature / 8.0);
  if (curvature / 8.0 > params.interpolation_tolerance * (1.0 + vmax))
    est.diagnostics.warnings.push_back("x1 lattice is coarse for the inner value function (interpolation error bound " +
                                       std::to_string(curvature / 8.0) + ")");
  return est;
}

}  // namespace grp::gexp
