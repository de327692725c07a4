#include "grp/roughness/roughness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "grp/sim/gbm.hpp"
#include "grp/util/regression.hpp"

namespace grp::roughness {

std::vector<Vector> direction_mesh(std::size_t dim, std::size_t size) {
  if (dim == 0) throw std::invalid_argument("direction_mesh: dimension must be positive");
  std::vector<Vector> out;
  if (dim == 1) {
    out.push_back(Vector::Ones(1));
    return out;
  }
  if (dim == 2) {
    const std::size_t m = size == 0 ? 64 : size;
    for (std::size_t j = 0; j < m; ++j) {
      const double phi = std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
      Vector v(2);
      v << std::cos(phi), std::sin(phi);
      out.push_back(v);
    }
    return out;
  }
  const std::size_t m = size == 0 ? 256 : size;
  if (dim == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t j = 0; j < m; ++j) {
      const double z = 1.0 - 2.0 * (static_cast<double>(j) + 0.5) / static_cast<double>(m);
      const double r = std::sqrt(1.0 - z * z);
      Vector v(3);
      v << r * std::cos(golden * static_cast<double>(j)), r * std::sin(golden * static_cast<double>(j)), z;
      out.push_back(v);
    }
    return out;
  }
  std::mt19937_64 gen(0x5eedULL + dim);
  std::normal_distribution<double> normal;
  for (std::size_t j = 0; j < m; ++j) {
    Vector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index c = 0; c < v.size(); ++c) v(c) = normal(gen);
    out.push_back(v.normalized());
  }
  return out;
}

namespace {

// inf over s of sup_{|t-s| <= m} |p_t - p_s| via monotone deques.
double windowed_inf_sup(const std::vector<double>& p, std::size_t m) {
  const std::size_t n = p.size();
  std::deque<std::size_t> hi, lo;
  std::size_t right = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t last = std::min(n - 1, s + m);
    for (; right <= last; ++right) {
      while (!hi.empty() && p[hi.back()] <= p[right]) hi.pop_back();
      hi.push_back(right);
      while (!lo.empty() && p[lo.back()] >= p[right]) lo.pop_back();
      lo.push_back(right);
    }
    const std::size_t first = s >= m ? s - m : 0;
    while (hi.front() < first) hi.pop_front();
    while (lo.front() < first) lo.pop_front();
    best = std::min(best, std::max(p[hi.front()] - p[s], p[s] - p[lo.front()]));
  }
  return best;
}

}  // namespace

RoughnessReport dyadic_roughness(const GridPath& path, double theta, unsigned n_max, std::span<const Vector> directions,
                                 bool direct) {
  if (!(theta > 0.0 && theta <= 1.0)) throw std::invalid_argument("dyadic_roughness: theta must lie in (0, 1]");
  const std::size_t steps = path.grid().n_steps();
  if (n_max == 0 || n_max >= 63 || steps % (std::size_t{1} << n_max) != 0)
    throw std::invalid_argument("dyadic_roughness: n_max too deep for the grid");
  const std::size_t d = path.dim();
  std::vector<Vector> own;
  if (directions.empty()) {
    own = direction_mesh(d);
    directions = own;
  }
  for (const Vector& a : directions)
    if (static_cast<std::size_t>(a.size()) != d) throw std::invalid_argument("dyadic_roughness: direction dimension");

  RoughnessReport report{theta, n_max, 0.0, 0.0, std::vector<double>(n_max, std::numeric_limits<double>::infinity()),
                         std::nullopt, 0.0};
  const double horizon = path.grid().horizon();
  double direct_best = std::numeric_limits<double>::infinity();
  std::vector<double> p(path.n_points());
  const std::size_t finest = std::size_t{1} << n_max;
  const std::size_t len = steps / finest;
  std::vector<double> bmax(finest), bmin(finest);
  for (const Vector& a : directions) {
    for (std::size_t k = 0; k < p.size(); ++k) {
      const auto x = path.at(k);
      double v = 0.0;
      for (std::size_t c = 0; c < d; ++c) v += a(static_cast<Eigen::Index>(c)) * x[c];
      p[k] = v;
    }
    // Finest blocks share endpoints with their neighbours, so merging children gives parent extrema.
    for (std::size_t b = 0; b < finest; ++b) {
      const auto first = p.begin() + static_cast<std::ptrdiff_t>(b * len);
      const auto [mn, mx] = std::minmax_element(first, first + static_cast<std::ptrdiff_t>(len + 1));
      bmin[b] = *mn;
      bmax[b] = *mx;
    }
    std::vector<double> hi = bmax, lo = bmin;
    for (unsigned n = n_max; n >= 1; --n) {
      const std::size_t blocks = std::size_t{1} << n;
      double level = std::numeric_limits<double>::infinity();
      for (std::size_t b = 0; b < blocks; ++b) level = std::min(level, hi[b] - lo[b]);
      report.level_minima[n - 1] = std::min(report.level_minima[n - 1], std::pow(2.0, theta * n) * level);
      for (std::size_t b = 0; b < blocks / 2; ++b) {
        hi[b] = std::max(hi[2 * b], hi[2 * b + 1]);
        lo[b] = std::min(lo[2 * b], lo[2 * b + 1]);
      }
    }
    if (direct)
      for (unsigned n = 1; n < n_max; ++n) {
        const std::size_t m = steps >> n;
        const double eps = horizon * std::ldexp(1.0, -static_cast<int>(n));
        direct_best = std::min(direct_best, windowed_inf_sup(p, m) / std::pow(eps, theta));
      }
  }
  report.d_theta = *std::min_element(report.level_minima.begin(), report.level_minima.end());
  report.l_theta_lower = 0.5 * std::pow(2.0 * horizon, -theta) * report.d_theta;
  if (direct && n_max > 1) report.direct_estimate = direct_best;

  if (n_max >= 2 && report.d_theta > 0.0) {
    std::vector<double> xs, ys;
    for (unsigned n = 1; n <= n_max; ++n) {
      xs.push_back(n);
      ys.push_back(std::log2(report.level_minima[n - 1]));
    }
    report.decay_slope = fit_line(xs, ys).slope;
  } else {
    report.decay_slope = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

std::vector<Law> band_laws(const sim::VolatilityBand& band) {
  band.validate();
  if (band.dim != 1) throw std::invalid_argument("band_laws: scalar bands only");
  if (band.degenerate()) return {{"constant sigma=" + std::to_string(band.sigma_low), sim::ControlKind::constant, band.sigma_low}};
  return {{"constant sigma=" + std::to_string(band.sigma_low), sim::ControlKind::constant, band.sigma_low},
          {"constant sigma=" + std::to_string(band.sigma_high), sim::ControlKind::constant, band.sigma_high},
          {"piecewise [" + std::to_string(band.sigma_low) + "," + std::to_string(band.sigma_high) + "]",
           sim::ControlKind::piecewise_constant, 0.0}};
}

namespace {

GridPath simulate_law(const sim::VolatilityBand& band, const Law& law, const TimeGrid& grid, std::uint64_t seed,
                      std::uint64_t path) {
  const sim::ControlPath control = law.kind == sim::ControlKind::constant
                                       ? sim::constant_control(band, grid, law.sigma)
                                       : sim::sample_control(band, law.kind, grid, seed, {}, path);
  return sim::sample_gbm_path(control, seed, path).b;
}

void check_params(const TailParams& params) {
  if (params.n_seeds == 0) throw std::invalid_argument("tail experiment: n_seeds must be positive");
  if (!(params.horizon > 0.0)) throw std::invalid_argument("tail experiment: horizon must be positive");
}

}  // namespace

TailReport roughness_tail_experiment(std::span<const sim::VolatilityBand> bands, std::span<const double> eps_grid,
                                     const TailParams& params) {
  check_params(params);
  if (eps_grid.empty()) throw std::invalid_argument("roughness_tail_experiment: empty eps grid");
  if (bands.empty()) throw std::invalid_argument("roughness_tail_experiment: no bands");
  const double eps_cap = 1.0 / (2.0 * std::pow(params.horizon, params.theta));
  for (double e : eps_grid)
    if (!(e > 0.0 && e < eps_cap)) throw std::invalid_argument("roughness_tail_experiment: eps outside (0, 1/(2 T^theta))");

  const TimeGrid grid(params.horizon, params.n_steps);
  TailReport report;
  report.min_l = std::numeric_limits<double>::infinity();
  report.max_l = 0.0;
  std::vector<std::vector<double>> samples;  // per law
  for (std::size_t bi = 0; bi < bands.size(); ++bi)
    for (const Law& law : band_laws(bands[bi])) {
      report.law_labels.push_back("band" + std::to_string(bi) + " " + law.label);
      std::vector<double> ls;
      for (std::size_t s = 0; s < params.n_seeds; ++s) {
        const GridPath b = simulate_law(bands[bi], law, grid, params.seed, s);
        const double l = dyadic_roughness(b, params.theta, params.n_max, {}, false).l_theta_lower;
        report.min_l = std::min(report.min_l, l);
        report.max_l = std::max(report.max_l, l);
        ls.push_back(l);
      }
      samples.push_back(std::move(ls));
    }
  std::vector<double> xs, ys;
  for (double e : eps_grid) {
    TailRow row{e, 0.0, {}};
    for (const auto& ls : samples) {
      const auto hits = std::count_if(ls.begin(), ls.end(), [e](double l) { return l < e; });
      row.per_law.push_back(static_cast<double>(hits) / static_cast<double>(ls.size()));
      row.frequency = std::max(row.frequency, row.per_law.back());
    }
    if (row.frequency > 0.0 && row.frequency < 1.0) {
      xs.push_back(1.0 / (e * e));
      ys.push_back(std::log(row.frequency));
    }
    report.rows.push_back(std::move(row));
  }
  report.fitted_points = xs.size();
  if (xs.size() >= 3) {
    const LinearFit fit = fit_line(xs, ys);
    report.slope = fit.slope;
    report.r_squared = fit.r_squared;
  }
  return report;
}

ExponentialTailReport exponential_tail_check(const sim::VolatilityBand& band, std::span<const double> eps_grid,
                                             const TailParams& params) {
  check_params(params);
  if (eps_grid.empty()) throw std::invalid_argument("exponential_tail_check: empty eps grid");
  const TimeGrid grid(params.horizon, params.n_steps);
  const auto laws = band_laws(band);
  ExponentialTailReport report;
  report.pass = true;
  std::vector<std::vector<double>> sups;
  for (const Law& law : laws) {
    report.law_labels.push_back(law.label);
    std::vector<double> v;
    for (std::size_t s = 0; s < params.n_seeds; ++s) v.push_back(simulate_law(band, law, grid, params.seed, s).sup_norm());
    sups.push_back(std::move(v));
  }
  const double d = static_cast<double>(band.dim);
  const double n = static_cast<double>(params.n_seeds);
  for (double e : eps_grid) {
    if (!(e > 0.0)) throw std::invalid_argument("exponential_tail_check: eps must be positive");
    ExponentialTailRow row;
    row.eps = e;
    row.bound = d * std::exp(-1.0 / (e * e * d * params.horizon * band.sigma_high * band.sigma_high));
    for (std::size_t li = 0; li < laws.size(); ++li) {
      const auto hits = std::count_if(sups[li].begin(), sups[li].end(), [e](double s) { return s >= 1.0 / e; });
      const double p = static_cast<double>(hits) / n;
      const double half = std::sqrt(p * (1.0 - p) / n);
      const bool ok = p <= row.bound + 3.0 * half;
      row.frequency.push_back(p);
      row.standard_error.push_back(half);
      row.within.push_back(ok);
      if (!ok) {
        report.pass = false;
        report.violations.push_back(laws[li].label + " at eps=" + std::to_string(e));
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace grp::roughness
