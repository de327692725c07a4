#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "grp/core/grid_path.hpp"
#include "grp/core/rough_path.hpp"

namespace grp {

using Level2Fn = std::function<Matrix(std::size_t i, std::size_t j)>;

/// Which triples i < j < k a Chen check visits.
///
/// Grids with at most `exhaustive_max_steps` steps are checked on every
/// triple. Larger grids are checked on every triple whose first two indices
/// both belong to an anchor set (deterministic spread plus `random_anchors`
/// seeded picks); the third index ranges over the whole grid. The full triple
/// set is cubic in the grid size and out of reach at 2^14 steps.
struct TripleSampling {
  std::size_t exhaustive_max_steps = 128;
  std::size_t spread_anchors = 12;
  std::size_t random_anchors = 12;
  std::uint64_t seed = 0x0c4e11d5u;
};

std::vector<std::size_t> chen_anchor_indices(std::size_t n_steps, const TripleSampling& sampling);

/// max |XX_{i,k} - XX_{i,j} - XX_{j,k} - X_{i,j} (x) X_{j,k}| over the visited triples,
/// for externally supplied level-2 data.
double chen_defect(const GridPath& path, const Level2Fn& level2, const TripleSampling& sampling = {});

/// Same check for a RoughPath, reading interval values from Chen row scans.
double chen_defect(const RoughPath& rp, const TripleSampling& sampling = {});

}  // namespace grp
