#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "grp/core/grid_path.hpp"

namespace grp {

enum class LiftKind { ito, stratonovich };

const char* to_string(LiftKind kind) noexcept;

/// Second-order data stored as one d x d block per base step; the value on a
/// longer interval is recovered through Chen's identity.
class LevelTwo {
 public:
  LevelTwo(std::size_t dim, std::vector<double> step_blocks);

  static LevelTwo zeros(std::size_t n_steps, std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t n_steps() const noexcept { return blocks_.size() / (dim_ * dim_); }

  /// Row-major d x d block for base step k.
  std::span<const double> block(std::size_t k) const {
    return {blocks_.data() + k * dim_ * dim_, dim_ * dim_};
  }
  std::span<const double> data() const noexcept { return blocks_; }

  LevelTwo scaled(double factor) const;

 private:
  std::size_t dim_;
  std::vector<double> blocks_;
};

class RoughPath {
 public:
  RoughPath(GridPath path, LevelTwo level2, LiftKind kind);

  const GridPath& path() const noexcept { return path_; }
  const LevelTwo& level2() const noexcept { return level2_; }
  LiftKind kind() const noexcept { return kind_; }
  const TimeGrid& grid() const noexcept { return path_.grid(); }
  std::size_t dim() const noexcept { return path_.dim(); }

 private:
  GridPath path_;
  LevelTwo level2_;
  LiftKind kind_;
};

/// Walks k = start, start+1, ... accumulating
///   XX_{start,k+1} = XX_{start,k} + block_k + X_{start,k} (x) X_{k,k+1}
/// with Neumaier-compensated sums. Every interval value in the library goes
/// through this one recurrence, so row scans and single reconstructions agree
/// bit for bit.
class ChenAccumulator {
 public:
  ChenAccumulator(const RoughPath& rp, std::size_t start);

  std::size_t start() const noexcept { return start_; }
  std::size_t end() const noexcept { return end_; }
  void advance();

  /// XX_{start,end}, row-major d x d.
  void value(std::span<double> out) const;
  /// Frobenius norm of XX_{start,end}.
  double frobenius() const;

 private:
  const RoughPath* rp_;
  std::size_t start_;
  std::size_t end_;
  std::vector<double> sum_;
  std::vector<double> comp_;
  std::vector<double> term_;
};

/// XX_{t_i, t_j} for grid indices i < j.
Matrix reconstruct_level2(const RoughPath& rp, std::size_t i, std::size_t j);

/// XX_{t_i, t_k} for k = i..n_steps, packed as (n_steps - i + 1) row-major blocks.
std::vector<double> level2_row(const RoughPath& rp, std::size_t i);

}  // namespace grp
