#pragma once

#include <cstddef>

namespace grp {

/// Uniform grid t_k = k * T / n on [0, T].
class TimeGrid {
 public:
  TimeGrid(double horizon, std::size_t n_steps);

  double horizon() const noexcept { return horizon_; }
  std::size_t n_steps() const noexcept { return n_steps_; }
  std::size_t n_points() const noexcept { return n_steps_ + 1; }
  double step() const noexcept { return horizon_ / static_cast<double>(n_steps_); }

  double time(std::size_t k) const noexcept {
    return horizon_ * static_cast<double>(k) / static_cast<double>(n_steps_);
  }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double horizon_;
  std::size_t n_steps_;
};

}  // namespace grp
