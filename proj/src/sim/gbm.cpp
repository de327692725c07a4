#include "grp/sim/gbm.hpp"

#include <cmath>
#include <stdexcept>

#include "grp/sim/rng.hpp"

namespace grp::sim {

SamplePath sample_gbm_path(const ControlPath& control, std::uint64_t seed, std::uint64_t path_index) {
  const TimeGrid& grid = control.grid();
  const std::size_t d = control.dim();
  const std::size_t n = grid.n_steps();
  const double root_h = std::sqrt(grid.step());
  const CounterRng rng(seed);
  const bool feedback = control.kind() == ControlKind::feedback_bang_bang;

  std::vector<double> b((n + 1) * d, 0.0);
  std::vector<double> w((n + 1) * d, 0.0);
  std::vector<double> used;
  std::vector<double> hi, lo;
  if (feedback) {
    used.reserve(n * d * d);
    hi = extreme_volatility(control.band(), true);
    lo = extreme_volatility(control.band(), false);
  }
  std::vector<double> dw(d);
  for (std::size_t k = 0; k < n; ++k) {
    rng.normals(Stream::wiener, path_index, static_cast<std::uint32_t>(k), dw);
    for (double& x : dw) x *= root_h;
    std::span<const double> a = control.at(k);
    if (feedback) {
      const std::span<const double> state(b.data() + k * d, d);
      const auto& choice = control.indicator()(grid.time(k), state) ? hi : lo;
      used.insert(used.end(), choice.begin(), choice.end());
      a = choice;
    }
    for (std::size_t r = 0; r < d; ++r) {
      double db = 0.0;
      for (std::size_t c = 0; c < d; ++c) db += a[r * d + c] * dw[c];
      b[(k + 1) * d + r] = b[k * d + r] + db;
      w[(k + 1) * d + r] = w[k * d + r] + dw[r];
    }
  }
  ControlPath realized = feedback ? ControlPath(grid, control.band(), std::move(used), control.kind(),
                                                control.indicator())
                                  : control;
  return SamplePath{GridPath(grid, d, std::move(b)), GridPath(grid, d, std::move(w)), std::move(realized), seed};
}

QuadraticVariationPath::QuadraticVariationPath(TimeGrid grid, std::size_t dim, std::vector<double> values)
    : grid_(grid), dim_(dim), values_(std::move(values)) {
  if (dim_ == 0 || values_.size() != grid_.n_points() * dim_ * dim_)
    throw std::invalid_argument("QuadraticVariationPath: size does not match grid and dimension");
}

Matrix QuadraticVariationPath::increment(std::size_t i, std::size_t j) const {
  std::vector<double> diff(dim_ * dim_);
  const auto a = at(i);
  const auto b = at(j);
  for (std::size_t e = 0; e < diff.size(); ++e) diff[e] = b[e] - a[e];
  return row_major_matrix(diff, dim_, dim_);
}

QuadraticVariationPath quadratic_variation(const GridPath& b) {
  const std::size_t d = b.dim();
  const std::size_t n = b.grid().n_steps();
  const std::size_t dd = d * d;
  std::vector<double> qv((n + 1) * dd, 0.0);
  std::vector<double> db(d);
  for (std::size_t k = 0; k < n; ++k) {
    b.increment(k, k + 1, db);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        qv[(k + 1) * dd + r * d + c] = qv[k * dd + r * d + c] + db[r] * db[c];
  }
  return QuadraticVariationPath(b.grid(), d, std::move(qv));
}

RoughPath ito_lift(const GridPath& b) {
  return RoughPath(b, LevelTwo::zeros(b.grid().n_steps(), b.dim()), LiftKind::ito);
}

RoughPath stratonovich_lift(const RoughPath& ito, const QuadraticVariationPath& qv) {
  if (ito.kind() != LiftKind::ito) throw std::invalid_argument("stratonovich_lift: input must be an Ito lift");
  if (!(ito.grid() == qv.grid()) || ito.dim() != qv.dim()) throw std::invalid_argument("grid mismatch");
  const std::size_t d = ito.dim();
  const std::size_t dd = d * d;
  const std::size_t n = ito.grid().n_steps();
  std::vector<double> blocks(ito.level2().data().begin(), ito.level2().data().end());
  for (std::size_t k = 0; k < n; ++k) {
    const auto q0 = qv.at(k);
    const auto q1 = qv.at(k + 1);
    for (std::size_t e = 0; e < dd; ++e) blocks[k * dd + e] += 0.5 * (q1[e] - q0[e]);
  }
  return RoughPath(ito.path(), LevelTwo(d, std::move(blocks)), LiftKind::stratonovich);
}

}  // namespace grp::sim
