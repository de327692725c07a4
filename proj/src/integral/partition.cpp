#include "grp/integral/partition.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace grp::integral {

Partition::Partition(const TimeGrid& grid, std::vector<std::size_t> indices)
    : grid_(grid), indices_(std::move(indices)) {
  if (indices_.size() < 2) throw std::invalid_argument("Partition: need at least two points");
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] > grid_.n_steps()) throw std::invalid_argument("Partition: index beyond the grid");
    if (i > 0 && indices_[i] <= indices_[i - 1]) throw std::invalid_argument("Partition: indices must increase strictly");
  }
}

Partition Partition::strided(const TimeGrid& grid, std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("Partition: stride must be positive");
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < grid.n_steps(); k += stride) idx.push_back(k);
  idx.push_back(grid.n_steps());
  return Partition(grid, std::move(idx));
}

Partition Partition::dyadic(const TimeGrid& grid, unsigned level) {
  if (level >= 63) throw std::invalid_argument("not grid-aligned");
  const std::size_t pieces = std::size_t{1} << level;
  if (grid.n_steps() % pieces != 0) throw std::invalid_argument("not grid-aligned");
  return strided(grid, grid.n_steps() / pieces);
}

Partition Partition::random(const TimeGrid& grid, std::size_t interior, std::uint64_t seed) {
  const std::size_t n = grid.n_steps();
  if (n < 1 || interior > n - 1) throw std::invalid_argument("Partition: too many interior points");
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::size_t> pick(1, std::max<std::size_t>(1, n - 1));
  std::set<std::size_t> chosen{0, n};
  while (chosen.size() < interior + 2) chosen.insert(pick(gen));
  return Partition(grid, std::vector<std::size_t>(chosen.begin(), chosen.end()));
}

Partition Partition::from_times(const TimeGrid& grid, std::span<const double> times) {
  std::vector<std::size_t> idx;
  idx.reserve(times.size());
  for (double t : times) {
    const double k = t / grid.step();
    const double r = std::round(k);
    if (!std::isfinite(k) || std::abs(k - r) > 1e-9 || r < 0.0) throw std::invalid_argument("not grid-aligned");
    idx.push_back(static_cast<std::size_t>(r));
  }
  return Partition(grid, std::move(idx));
}

Partition Partition::base(const TimeGrid& grid, std::size_t first, std::size_t last) {
  if (first >= last) throw std::invalid_argument("Partition: empty interval");
  std::vector<std::size_t> idx(last - first + 1);
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = first + k;
  return Partition(grid, std::move(idx));
}

double Partition::mesh() const noexcept {
  std::size_t widest = 0;
  for (std::size_t i = 1; i < indices_.size(); ++i) widest = std::max(widest, indices_[i] - indices_[i - 1]);
  return static_cast<double>(widest) * grid_.step();
}

}  // namespace grp::integral
