#include "grp/sim/volatility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grp/sim/rng.hpp"

namespace grp::sim {

VolatilityBand VolatilityBand::scalar(double sigma_low, double sigma_high, std::size_t control_levels) {
  VolatilityBand band{sigma_low, sigma_high, control_levels, 1, {}};
  band.validate();
  return band;
}

VolatilityBand VolatilityBand::isotropic(double sigma_low, double sigma_high, std::size_t dim,
                                         std::size_t control_levels) {
  VolatilityBand band{sigma_low, sigma_high, control_levels, dim, {}};
  if (dim > 1)
    for (double s : band.lattice())
      band.gamma_set.push_back(s * Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
  band.validate();
  return band;
}

void VolatilityBand::validate() const {
  if (!(sigma_low > 0.0) || !(sigma_low <= sigma_high) || !std::isfinite(sigma_high))
    throw std::invalid_argument("VolatilityBand: need 0 < sigma_low <= sigma_high < inf");
  if (control_levels < 2) throw std::invalid_argument("VolatilityBand: control_levels must be >= 2");
  if (dim == 0) throw std::invalid_argument("VolatilityBand: dim must be >= 1");
  if (dim > 1) {
    if (gamma_set.empty()) throw std::invalid_argument("VolatilityBand: empty gamma_set for d > 1");
    for (const Matrix& g : gamma_set)
      if (static_cast<std::size_t>(g.rows()) != dim || static_cast<std::size_t>(g.cols()) != dim)
        throw std::invalid_argument("VolatilityBand: gamma_set entries must be d x d");
  }
}

std::vector<double> VolatilityBand::lattice() const {
  std::vector<double> out(control_levels);
  for (std::size_t i = 0; i < control_levels; ++i)
    out[i] = sigma_low + (sigma_high - sigma_low) * static_cast<double>(i) / static_cast<double>(control_levels - 1);
  return out;
}

const char* to_string(ControlKind kind) noexcept {
  switch (kind) {
    case ControlKind::constant: return "constant";
    case ControlKind::piecewise_constant: return "piecewise_constant";
    case ControlKind::feedback_bang_bang: return "feedback_bang_bang";
  }
  return "unknown";
}

ControlKind control_kind_from_string(const std::string& name) {
  if (name == "constant") return ControlKind::constant;
  if (name == "piecewise_constant" || name == "piecewise") return ControlKind::piecewise_constant;
  if (name == "feedback_bang_bang" || name == "bang_bang") return ControlKind::feedback_bang_bang;
  throw std::invalid_argument("unknown control kind '" + name + "'");
}

namespace {

bool admissible(const VolatilityBand& band, std::span<const double> a) {
  if (band.dim == 1) return a[0] >= band.sigma_low && a[0] <= band.sigma_high;
  const std::size_t d = band.dim;
  return std::any_of(band.gamma_set.begin(), band.gamma_set.end(), [&](const Matrix& g) {
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        if (g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) != a[r * d + c]) return false;
    return true;
  });
}

// Admissible values as flat d*d buffers (scalar lattice for d = 1).
std::vector<std::vector<double>> admissible_values(const VolatilityBand& band) {
  std::vector<std::vector<double>> out;
  if (band.dim == 1) {
    for (double s : band.lattice()) out.push_back({s});
    return out;
  }
  const std::size_t d = band.dim;
  for (const Matrix& g : band.gamma_set) {
    std::vector<double> v(d * d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) v[r * d + c] = g(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

ControlPath::ControlPath(TimeGrid grid, VolatilityBand band, std::vector<double> a_values, ControlKind kind,
                         ConvexityIndicator indicator)
    : grid_(grid), band_(std::move(band)), a_values_(std::move(a_values)), kind_(kind), indicator_(std::move(indicator)) {
  band_.validate();
  const std::size_t dd = band_.dim * band_.dim;
  if (a_values_.size() != grid_.n_steps() * dd)
    throw std::invalid_argument("ControlPath: expected one volatility value per step");
  for (std::size_t k = 0; k < grid_.n_steps(); ++k)
    if (!admissible(band_, at(k))) throw std::invalid_argument("ControlPath: value outside the admissible set");
  if (kind_ == ControlKind::feedback_bang_bang && !indicator_)
    throw std::invalid_argument("ControlPath: feedback control needs a convexity indicator");
}

std::vector<double> extreme_volatility(const VolatilityBand& band, bool largest) {
  band.validate();
  if (band.dim == 1) return {largest ? band.sigma_high : band.sigma_low};
  const auto values = admissible_values(band);
  const auto power = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;  // tr(gamma gamma^T)
    return s;
  };
  const auto it = largest ? std::max_element(values.begin(), values.end(),
                                             [&](const auto& l, const auto& r) { return power(l) < power(r); })
                          : std::min_element(values.begin(), values.end(),
                                             [&](const auto& l, const auto& r) { return power(l) < power(r); });
  return *it;
}

ControlPath sample_control(const VolatilityBand& band, ControlKind kind, const TimeGrid& grid, std::uint64_t seed,
                           const ConvexityIndicator& indicator, std::uint64_t path_index) {
  band.validate();
  const std::size_t n = grid.n_steps();
  const std::size_t dd = band.dim * band.dim;
  const auto values = admissible_values(band);
  const CounterRng rng(seed);
  const auto pick = [&](std::uint32_t index) {
    const double u = rng.uniform_pair(Stream::control, path_index, index)[0];
    const auto i = std::min(values.size() - 1, static_cast<std::size_t>(u * static_cast<double>(values.size())));
    return values[i];
  };
  std::vector<double> a;
  a.reserve(n * dd);
  switch (kind) {
    case ControlKind::constant: {
      const auto v = pick(0);
      for (std::size_t k = 0; k < n; ++k) a.insert(a.end(), v.begin(), v.end());
      break;
    }
    case ControlKind::piecewise_constant:
      for (std::size_t k = 0; k < n; ++k) {
        const auto v = pick(static_cast<std::uint32_t>(k));
        a.insert(a.end(), v.begin(), v.end());
      }
      break;
    case ControlKind::feedback_bang_bang: {
      if (!indicator) throw std::invalid_argument("sample_control: feedback control needs a convexity indicator");
      const auto hi = extreme_volatility(band, true);
      const auto lo = extreme_volatility(band, false);
      const std::vector<double> zero(band.dim, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        const auto& v = indicator(grid.time(k), zero) ? hi : lo;
        a.insert(a.end(), v.begin(), v.end());
      }
      break;
    }
  }
  return ControlPath(grid, band, std::move(a), kind, indicator);
}

ControlPath constant_control(const VolatilityBand& band, const TimeGrid& grid, double sigma) {
  if (band.dim != 1) throw std::invalid_argument("constant_control: scalar volatility needs d = 1");
  return ControlPath(grid, band, std::vector<double>(grid.n_steps(), sigma), ControlKind::constant);
}

ControlPath constant_control_matrix(const VolatilityBand& band, const TimeGrid& grid, std::size_t gamma_index) {
  band.validate();
  const auto values = admissible_values(band);
  if (gamma_index >= values.size()) throw std::out_of_range("constant_control_matrix: gamma index out of range");
  std::vector<double> a;
  a.reserve(grid.n_steps() * values[gamma_index].size());
  for (std::size_t k = 0; k < grid.n_steps(); ++k)
    a.insert(a.end(), values[gamma_index].begin(), values[gamma_index].end());
  return ControlPath(grid, band, std::move(a), ControlKind::constant);
}

}  // namespace grp::sim
