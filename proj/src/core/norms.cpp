#include "grp/core/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grp {

namespace detail {

std::vector<double> inverse_lag_powers(const TimeGrid& grid, double power) {
  const std::size_t n = grid.n_steps();
  std::vector<double> out(n + 1, 0.0);
  const double h = grid.step();
  for (std::size_t m = 1; m <= n; ++m) out[m] = std::pow(static_cast<double>(m) * h, -power);
  return out;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("Hoelder exponent must lie in (0, 1]");
}

}  // namespace detail

double hoelder_norm(const GridPath& path, double alpha) {
  detail::check_alpha(alpha);
  const std::size_t n = path.grid().n_steps();
  const std::size_t d = path.dim();
  const auto inv = detail::inverse_lag_powers(path.grid(), alpha);
  const auto x = path.data();
  double best = 0.0;
  if (d == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = x[i];
      for (std::size_t j = i + 1; j <= n; ++j) best = std::max(best, std::abs(x[j] - xi) * inv[j - i]);
    }
    return best;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double dx = x[j * d + c] - x[i * d + c];
        s += dx * dx;
      }
      best = std::max(best, std::sqrt(s) * inv[j - i]);
    }
  }
  return best;
}

double two_alpha_norm(const RoughPath& rp, double alpha) {
  detail::check_alpha(alpha);
  const std::size_t n = rp.grid().n_steps();
  const auto inv = detail::inverse_lag_powers(rp.grid(), 2.0 * alpha);
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ChenAccumulator acc(rp, i);
    for (std::size_t j = i + 1; j <= n; ++j) {
      acc.advance();
      best = std::max(best, acc.frobenius() * inv[j - i]);
    }
  }
  return best;
}

double rough_path_seminorm(const RoughPath& rp, double alpha) {
  return hoelder_norm(rp.path(), alpha) + std::sqrt(two_alpha_norm(rp, alpha));
}

}  // namespace grp
