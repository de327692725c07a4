#include "grp/sim/scaling.hpp"

#include <cmath>
#include <stdexcept>

#include "grp/core/rough_path.hpp"
#include "grp/sim/gbm.hpp"
#include "grp/util/regression.hpp"

namespace grp::sim {

ScalingReport moment_scaling_check(const VolatilityBand& band, const ScalingParams& params) {
  band.validate();
  if (params.q != 2 && params.q != 4 && params.q != 6) throw std::invalid_argument("moment_scaling_check: q must be 2, 4 or 6");
  if (params.level != 1 && params.level != 2) throw std::invalid_argument("moment_scaling_check: level must be 1 or 2");
  if (params.lags.size() < 3) throw std::invalid_argument("underdetermined regression");
  if (params.n_paths == 0) throw std::invalid_argument("moment_scaling_check: n_paths must be positive");
  const std::size_t n = params.grid.n_steps();
  for (std::size_t lag : params.lags)
    if (lag == 0 || lag > n) throw std::invalid_argument("moment_scaling_check: lag outside the grid");

  const std::size_t d = band.dim;
  const std::size_t dd = d * d;
  std::vector<double> sums(params.lags.size(), 0.0);
  std::vector<std::size_t> counts(params.lags.size(), 0);
  const ConvexityIndicator convex = [](double, std::span<const double> x) { return x[0] >= 0.0; };
  std::vector<double> inc(d);

  for (std::size_t p = 0; p < params.n_paths; ++p) {
    const ControlPath control = sample_control(band, params.kind, params.grid, params.seed, convex, p);
    const SamplePath sample = sample_gbm_path(control, params.seed, p);
    std::vector<double> row;
    if (params.level == 2) row = level2_row(ito_lift(sample.b), 0);
    for (std::size_t li = 0; li < params.lags.size(); ++li) {
      const std::size_t lag = params.lags[li];
      for (std::size_t s = 0; s + lag <= n; s += lag) {
        const std::size_t t = s + lag;
        sample.b.increment(s, t, inc);
        double norm2 = 0.0;
        if (params.level == 1) {
          for (double x : inc) norm2 += x * x;
        } else {
          // BB_{s,t} = BB_{0,t} - BB_{0,s} - B_{0,s} (x) B_{s,t}
          const auto b0s = sample.b.at(s);
          const auto b00 = sample.b.at(0);
          for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) {
              const double v = row[t * dd + r * d + c] - row[s * dd + r * d + c] - (b0s[r] - b00[r]) * inc[c];
              norm2 += v * v;
            }
        }
        sums[li] += std::pow(norm2, 0.5 * params.q);
        ++counts[li];
      }
    }
  }

  ScalingReport report{};
  std::vector<double> log_tau, log_m;
  for (std::size_t li = 0; li < params.lags.size(); ++li) {
    const double tau = static_cast<double>(params.lags[li]) * params.grid.step();
    const double m = sums[li] / static_cast<double>(counts[li]);
    report.taus.push_back(tau);
    report.moments.push_back(m);
    log_tau.push_back(std::log(tau));
    log_m.push_back(std::log(m));
  }
  const LinearFit fit = fit_line(log_tau, log_m);
  report.slope = fit.slope;
  report.intercept = fit.intercept;
  report.r_squared = fit.r_squared;
  report.expected_slope = params.level == 1 ? 0.5 * params.q : static_cast<double>(params.q);
  return report;
}

}  // namespace grp::sim
