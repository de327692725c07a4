#include "grp/core/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace grp {

TimeGrid::TimeGrid(double horizon, std::size_t n_steps) : horizon_(horizon), n_steps_(n_steps) {
  if (n_steps == 0) throw std::invalid_argument("degenerate grid: n_steps must be >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("degenerate grid: horizon must be finite and > 0");
}

}  // namespace grp
