#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "grp/core/grid_path.hpp"
#include "grp/core/rough_path.hpp"

namespace grp::harness {

/// Numeric table written as CSV with every value at %.17g.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_double(double v);

void write_csv(const Table& table, const std::filesystem::path& file);

/// Header `t,x1,...,xd`, one row per grid point.
void write_path_csv(const GridPath& path, const std::filesystem::path& file);

/// Inverse of write_path_csv. Throws std::invalid_argument for a missing or
/// wrong header (naming the expected columns), malformed rows (with the line
/// number) and time columns that are not a uniform grid starting at 0.
GridPath load_path_csv(const std::filesystem::path& file);

/// Rows `step_index,i,j,value` for every per-step block entry.
void write_level2_csv(const RoughPath& rp, const std::filesystem::path& file);

/// Reads blocks written by write_level2_csv for a path with n_steps steps and dimension d.
LevelTwo load_level2_csv(const std::filesystem::path& file, std::size_t n_steps, std::size_t dim);

}  // namespace grp::harness
