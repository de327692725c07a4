#include "grp/core/rough_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grp {

const char* to_string(LiftKind kind) noexcept {
  return kind == LiftKind::ito ? "ito" : "stratonovich";
}

LevelTwo::LevelTwo(std::size_t dim, std::vector<double> step_blocks)
    : dim_(dim), blocks_(std::move(step_blocks)) {
  if (dim_ == 0) throw std::invalid_argument("LevelTwo: dimension must be >= 1");
  if (blocks_.empty() || blocks_.size() % (dim_ * dim_) != 0)
    throw std::invalid_argument("LevelTwo: block storage is not a whole number of d x d blocks");
  if (!std::all_of(blocks_.begin(), blocks_.end(), [](double v) { return std::isfinite(v); }))
    throw std::invalid_argument("LevelTwo: non-finite entry");
}

LevelTwo LevelTwo::zeros(std::size_t n_steps, std::size_t dim) {
  return LevelTwo(dim, std::vector<double>(n_steps * dim * dim, 0.0));
}

LevelTwo LevelTwo::scaled(double factor) const {
  std::vector<double> b(blocks_);
  for (double& v : b) v *= factor;
  return LevelTwo(dim_, std::move(b));
}

RoughPath::RoughPath(GridPath path, LevelTwo level2, LiftKind kind)
    : path_(std::move(path)), level2_(std::move(level2)), kind_(kind) {
  if (level2_.dim() != path_.dim())
    throw std::invalid_argument("RoughPath: level-2 dimension does not match the path");
  if (level2_.n_steps() != path_.grid().n_steps())
    throw std::invalid_argument("RoughPath: level-2 block count does not match the grid");
}

ChenAccumulator::ChenAccumulator(const RoughPath& rp, std::size_t start)
    : rp_(&rp), start_(start), end_(start) {
  if (start > rp.grid().n_steps()) throw std::out_of_range("ChenAccumulator: start beyond grid");
  const std::size_t dd = rp.dim() * rp.dim();
  sum_.assign(dd, 0.0);
  comp_.assign(dd, 0.0);
  term_.assign(dd, 0.0);
}

void ChenAccumulator::advance() {
  const GridPath& x = rp_->path();
  const std::size_t d = x.dim();
  const std::size_t k = end_;
  if (k >= x.grid().n_steps()) throw std::out_of_range("ChenAccumulator: advanced past the grid end");
  const auto xs = x.at(start_);
  const auto xk = x.at(k);
  const auto xk1 = x.at(k + 1);
  const auto block = rp_->level2().block(k);
  for (std::size_t a = 0; a < d; ++a) {
    const double left = xk[a] - xs[a];
    for (std::size_t b = 0; b < d; ++b) {
      const std::size_t idx = a * d + b;
      const double term = block[idx] + left * (xk1[b] - xk[b]);
      const double t = sum_[idx] + term;
      if (std::abs(sum_[idx]) >= std::abs(term))
        comp_[idx] += (sum_[idx] - t) + term;
      else
        comp_[idx] += (term - t) + sum_[idx];
      sum_[idx] = t;
    }
  }
  ++end_;
}

void ChenAccumulator::value(std::span<double> out) const {
  for (std::size_t i = 0; i < sum_.size(); ++i) out[i] = sum_[i] + comp_[i];
}

double ChenAccumulator::frobenius() const {
  double s = 0.0;
  for (std::size_t i = 0; i < sum_.size(); ++i) {
    const double v = sum_[i] + comp_[i];
    s += v * v;
  }
  return std::sqrt(s);
}

Matrix reconstruct_level2(const RoughPath& rp, std::size_t i, std::size_t j) {
  if (i >= j) throw std::invalid_argument("reconstruct_level2: empty interval (need i < j)");
  if (j > rp.grid().n_steps()) throw std::out_of_range("reconstruct_level2: index beyond grid");
  ChenAccumulator acc(rp, i);
  while (acc.end() < j) acc.advance();
  const std::size_t d = rp.dim();
  std::vector<double> tmp(d * d);
  acc.value(tmp);
  return row_major_matrix(tmp, d, d);
}

std::vector<double> level2_row(const RoughPath& rp, std::size_t i) {
  const std::size_t n = rp.grid().n_steps();
  if (i > n) throw std::out_of_range("level2_row: index beyond grid");
  const std::size_t dd = rp.dim() * rp.dim();
  std::vector<double> row((n - i + 1) * dd, 0.0);
  ChenAccumulator acc(rp, i);
  for (std::size_t k = i + 1; k <= n; ++k) {
    acc.advance();
    acc.value(std::span<double>(row.data() + (k - i) * dd, dd));
  }
  return row;
}

}  // namespace grp
