#include "grp/stoch/integrals.hpp"

#include <cmath>
#include <stdexcept>

#include "grp/util/regression.hpp"

namespace grp::stoch {

std::size_t integrand_rows(const GridPath& y, const GridPath& b) {
  if (!(y.grid() == b.grid())) throw std::invalid_argument("grid mismatch");
  if (y.dim() % b.dim() != 0) throw std::invalid_argument("dimension mismatch: integrand needs n*d components");
  return y.dim() / b.dim();
}

GridPath ito_integral(const GridPath& y, const GridPath& b) {
  const std::size_t n = integrand_rows(y, b);
  const std::size_t d = b.dim();
  const std::size_t steps = b.grid().n_steps();
  std::vector<double> out((steps + 1) * n, 0.0);
  std::vector<double> sum(n, 0.0), comp(n, 0.0);
  std::vector<double> db(d);
  for (std::size_t k = 0; k < steps; ++k) {
    b.increment(k, k + 1, db);
    const auto yk = y.at(k);
    for (std::size_t a = 0; a < n; ++a) {
      double term = 0.0;
      for (std::size_t c = 0; c < d; ++c) term += yk[a * d + c] * db[c];
      const double t = sum[a] + term;
      comp[a] += std::abs(sum[a]) >= std::abs(term) ? (sum[a] - t) + term : (term - t) + sum[a];
      sum[a] = t;
      out[(k + 1) * n + a] = sum[a] + comp[a];
    }
  }
  return GridPath(b.grid(), n, std::move(out));
}

CrossVariationPath::CrossVariationPath(TimeGrid grid, std::size_t rows, std::size_t cols, std::vector<double> values)
    : grid_(grid), rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ == 0 || cols_ == 0 || values_.size() != grid_.n_points() * rows_ * cols_)
    throw std::invalid_argument("CrossVariationPath: size does not match grid and dimensions");
}

Matrix CrossVariationPath::value(std::size_t k) const { return row_major_matrix(at(k), rows_, cols_); }

GridPath CrossVariationPath::contracted() const {
  if (rows_ % cols_ != 0) throw std::invalid_argument("dimension mismatch: integrand needs n*d components");
  const std::size_t n = rows_ / cols_;
  const std::size_t d = cols_;
  std::vector<double> out(grid_.n_points() * n, 0.0);
  for (std::size_t k = 0; k < grid_.n_points(); ++k) {
    const auto v = at(k);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < d; ++c) out[k * n + a] += v[(a * d + c) * d + c];
  }
  return GridPath(grid_, n, std::move(out));
}

CrossVariationPath cross_variation(const GridPath& y, const GridPath& b) {
  if (!(y.grid() == b.grid())) throw std::invalid_argument("grid mismatch");
  const std::size_t m = y.dim();
  const std::size_t d = b.dim();
  const std::size_t steps = b.grid().n_steps();
  std::vector<double> out((steps + 1) * m * d, 0.0);
  std::vector<double> dy(m), db(d);
  for (std::size_t k = 0; k < steps; ++k) {
    y.increment(k, k + 1, dy);
    b.increment(k, k + 1, db);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < d; ++c)
        out[(k + 1) * m * d + r * d + c] = out[k * m * d + r * d + c] + dy[r] * db[c];
  }
  return CrossVariationPath(b.grid(), m, d, std::move(out));
}

GridPath stratonovich_integral(const GridPath& y, const GridPath& b) {
  integrand_rows(y, b);
  return ito_integral(y, b).combine(1.0, cross_variation(y, b).contracted(), 0.5);
}

Vector midpoint_sum(const GridPath& y, const GridPath& b, const integral::Partition& part) {
  const std::size_t n = integrand_rows(y, b);
  if (!(part.grid() == b.grid())) throw std::invalid_argument("not grid-aligned");
  const std::size_t d = b.dim();
  Vector sum = Vector::Zero(static_cast<Eigen::Index>(n));
  std::vector<double> db(d);
  const auto idx = part.indices();
  for (std::size_t p = 0; p + 1 < idx.size(); ++p) {
    b.increment(idx[p], idx[p + 1], db);
    const auto yu = y.at(idx[p]);
    const auto yv = y.at(idx[p + 1]);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < d; ++c)
        sum(static_cast<Eigen::Index>(a)) += 0.5 * (yu[a * d + c] + yv[a * d + c]) * db[c];
  }
  return sum;
}

MidpointReport midpoint_convergence(const GridPath& y, const GridPath& b,
                                    std::span<const integral::Partition> partitions) {
  const GridPath strat = stratonovich_integral(y, b);
  MidpointReport report;
  const auto last = strat.at(b.grid().n_steps());
  report.stratonovich_value = Eigen::Map<const Vector>(last.data(), static_cast<Eigen::Index>(last.size()));
  std::vector<double> lx, ly;
  for (const auto& part : partitions) {
    if (part.first() != 0 || part.last() != b.grid().n_steps())
      throw std::invalid_argument("midpoint_convergence: partitions must span the grid");
    const double gap = (midpoint_sum(y, b, part) - report.stratonovich_value).norm();
    report.meshes.push_back(part.mesh());
    report.gaps.push_back(gap);
    if (gap > 1e-13) {
      lx.push_back(std::log(part.mesh()));
      ly.push_back(std::log(gap));
    }
  }
  if (lx.size() >= 3) report.fitted_order = fit_line(lx, ly).slope;
  return report;
}

Matrix coarse_cross_variation(const GridPath& y, const GridPath& b, const integral::Partition& part) {
  if (!(y.grid() == b.grid()) || !(part.grid() == b.grid())) throw std::invalid_argument("grid mismatch");
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(y.dim()), static_cast<Eigen::Index>(b.dim()));
  const auto idx = part.indices();
  for (std::size_t p = 0; p + 1 < idx.size(); ++p)
    out += y.increment(idx[p], idx[p + 1]) * b.increment(idx[p], idx[p + 1]).transpose();
  return out;
}

}  // namespace grp::stoch
