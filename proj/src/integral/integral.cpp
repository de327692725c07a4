#include "grp/integral/integral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grp/core/norms.hpp"
#include "grp/util/regression.hpp"

namespace grp::integral {

namespace {

// Neumaier-compensated vector sum.
struct CompensatedSum {
  std::vector<double> sum, comp;
  explicit CompensatedSum(std::size_t n) : sum(n, 0.0), comp(n, 0.0) {}
  void add(std::size_t a, double x) {
    const double t = sum[a] + x;
    comp[a] += std::abs(sum[a]) >= std::abs(x) ? (sum[a] - t) + x : (x - t) + sum[a];
    sum[a] = t;
  }
  double value(std::size_t a) const { return sum[a] + comp[a]; }
};

void check_compatible(const ControlledPath& cp, const RoughPath& rp) {
  if (!(cp.grid() == rp.grid()) || cp.base_dim() != rp.dim()) throw std::invalid_argument("grid mismatch");
}

// out[a] = sum_c Y[a][c] dx[c] + sum_{c,e} Y'[a][c][e] xx[e][c]
void compensated_term(const ControlledPath& cp, std::size_t s, std::span<const double> dx, std::span<const double> xx,
                      std::span<double> out) {
  const std::size_t n = cp.out_dim();
  const std::size_t d = cp.base_dim();
  const auto y = cp.y().at(s);
  const auto yp = cp.y_prime().at(s);
  for (std::size_t a = 0; a < n; ++a) {
    double v = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      v += y[a * d + c] * dx[c];
      for (std::size_t e = 0; e < d; ++e) v += yp[(a * d + c) * d + e] * xx[e * d + c];
    }
    out[a] = v;
  }
}

// Magnitude of the same term with every product taken in absolute value.
double term_magnitude(const ControlledPath& cp, std::size_t s, std::span<const double> dx, std::span<const double> xx) {
  const std::size_t n = cp.out_dim();
  const std::size_t d = cp.base_dim();
  const auto y = cp.y().at(s);
  const auto yp = cp.y_prime().at(s);
  double v = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < d; ++c) {
      v += std::abs(y[a * d + c] * dx[c]);
      for (std::size_t e = 0; e < d; ++e) v += std::abs(yp[(a * d + c) * d + e] * xx[e * d + c]);
    }
  return v;
}

double euclid(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

IntegralReport gubinelli_integral(const ControlledPath& cp, const RoughPath& rp, const Partition& part) {
  check_compatible(cp, rp);
  if (!(part.grid() == rp.grid())) throw std::invalid_argument("not grid-aligned");
  const std::size_t n = cp.out_dim();
  const std::size_t d = rp.dim();
  IntegralReport report;
  report.terms.reserve(part.size() - 1);
  CompensatedSum total(n);
  std::vector<double> dx(d), xx(d * d), term(n), step_term(n);
  const auto idx = part.indices();
  for (std::size_t p = 0; p + 1 < idx.size(); ++p) {
    const std::size_t s = idx[p];
    const std::size_t t = idx[p + 1];
    ChenAccumulator acc(rp, s);
    CompensatedSum fine(n);
    for (std::size_t k = s; k < t; ++k) {
      rp.path().increment(k, k + 1, dx);
      compensated_term(cp, k, dx, rp.level2().block(k), step_term);
      for (std::size_t a = 0; a < n; ++a) fine.add(a, step_term[a]);
      acc.advance();
    }
    acc.value(xx);
    rp.path().increment(s, t, dx);
    compensated_term(cp, s, dx, xx, term);
    double err = 0.0;
    Vector v(static_cast<Eigen::Index>(n));
    for (std::size_t a = 0; a < n; ++a) {
      total.add(a, term[a]);
      v(static_cast<Eigen::Index>(a)) = term[a];
      err += std::pow(term[a] - fine.value(a), 2);
    }
    report.max_local_error = std::max(report.max_local_error, std::sqrt(err));
    report.terms.push_back(std::move(v));
  }
  report.value.resize(static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) report.value(static_cast<Eigen::Index>(a)) = total.value(a);
  return report;
}

SmoothMap SmoothMap::identity(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("SmoothMap::identity: dimension must be positive");
  SmoothMap m;
  m.in_dim = dim;
  m.out_dim = 1;
  m.value = [](std::span<const double> x, std::span<double> y) { std::copy(x.begin(), x.end(), y.begin()); };
  m.derivative = [dim](std::span<const double>, std::span<double> dy) {
    std::fill(dy.begin(), dy.end(), 0.0);
    for (std::size_t c = 0; c < dim; ++c) dy[c * dim + c] = 1.0;
  };
  return m;
}

SmoothMap SmoothMap::scalar(std::function<double(double)> f, std::function<double(double)> df) {
  SmoothMap m;
  m.value = [f = std::move(f)](std::span<const double> x, std::span<double> y) { y[0] = f(x[0]); };
  m.derivative = [df = std::move(df)](std::span<const double> x, std::span<double> dy) { dy[0] = df(x[0]); };
  return m;
}

SmoothMap SmoothMap::square() {
  return scalar([](double x) { return x * x; }, [](double x) { return 2.0 * x; });
}

SmoothMap SmoothMap::constant(double c) {
  return scalar([c](double) { return c; }, [](double) { return 0.0; });
}

ControlledPath controlled_lift_smooth(const SmoothMap& f, std::shared_ptr<const RoughPath> rp) {
  if (!rp) throw std::invalid_argument("controlled_lift_smooth: missing rough path");
  const std::size_t d = rp->dim();
  if (f.in_dim != d) throw std::invalid_argument("controlled_lift_smooth: map input dimension differs from the path");
  if (!f.value || !f.derivative) throw std::invalid_argument("controlled_lift_smooth: map is incomplete");
  const std::size_t n = f.out_dim;
  const std::size_t points = rp->grid().n_points();
  std::vector<double> y(points * n * d), yp(points * n * d * d);
  for (std::size_t k = 0; k < points; ++k) {
    const auto x = rp->path().at(k);
    const std::span<double> yk(y.data() + k * n * d, n * d);
    const std::span<double> ypk(yp.data() + k * n * d * d, n * d * d);
    f.value(x, yk);
    f.derivative(x, ypk);
    if (!std::all_of(yk.begin(), yk.end(), [](double v) { return std::isfinite(v); }) ||
        !std::all_of(ypk.begin(), ypk.end(), [](double v) { return std::isfinite(v); }))
      throw std::invalid_argument("controlled_lift_smooth: non-finite value at grid point " + std::to_string(k));
  }
  const TimeGrid grid = rp->grid();
  return ControlledPath(GridPath(grid, n * d, std::move(y)), GridPath(grid, n * d * d, std::move(yp)), std::move(rp), n);
}

LocalErrorReport local_error_check(const ControlledPath& cp, const RoughPath& rp, double alpha) {
  check_compatible(cp, rp);
  detail::check_alpha(alpha);
  const auto is_zero = [](std::span<const double> v) { return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }); };
  if (is_zero(cp.y().data()) && is_zero(cp.y_prime().data())) throw std::invalid_argument("degenerate bound");

  LocalErrorReport report;
  report.denominator = hoelder_norm(rp.path(), alpha) * remainder_norm(cp, alpha) +
                       two_alpha_norm(rp, alpha) * hoelder_norm(cp.y_prime(), alpha);
  const std::size_t n = cp.out_dim();
  const std::size_t d = rp.dim();
  const std::size_t steps = rp.grid().n_steps();
  const auto inv_lag = detail::inverse_lag_powers(rp.grid(), 3.0 * alpha);
  std::vector<double> dx(d), xx(d * d), term(n), step_term(n), diff(n);
  double best = 0.0;
  for (std::size_t s = 0; s < steps; ++s) {
    ChenAccumulator acc(rp, s);
    CompensatedSum fine(n);
    double magnitude = 0.0;
    for (std::size_t t = s + 1; t <= steps; ++t) {
      const std::size_t k = t - 1;
      rp.path().increment(k, t, dx);
      compensated_term(cp, k, dx, rp.level2().block(k), step_term);
      magnitude += term_magnitude(cp, k, dx, rp.level2().block(k));
      for (std::size_t a = 0; a < n; ++a) fine.add(a, step_term[a]);
      acc.advance();
      acc.value(xx);
      rp.path().increment(s, t, dx);
      compensated_term(cp, s, dx, xx, term);
      for (std::size_t a = 0; a < n; ++a) diff[a] = fine.value(a) - term[a];
      const double num = euclid(diff);
      const double scale = magnitude + term_magnitude(cp, s, dx, xx);
      if (num <= 1e-12 * scale) continue;
      report.max_numerator = std::max(report.max_numerator, num);
      const double ratio = num * inv_lag[t - s];
      if (ratio > best) {
        best = ratio;
        report.worst_i = s;
        report.worst_j = t;
      }
    }
  }
  if (best > 0.0) {
    if (!(report.denominator > 0.0)) throw std::invalid_argument("degenerate bound");
    report.k_hat = best / report.denominator;
  }
  return report;
}

EquivalenceReport ito_vs_rough_equivalence(const ControlledPath& cp, const RoughPath& rp,
                                           std::span<const Partition> partitions) {
  check_compatible(cp, rp);
  if (rp.kind() != LiftKind::ito) throw std::invalid_argument("ito_vs_rough_equivalence: needs an Ito lift");
  const std::size_t n = cp.out_dim();
  const std::size_t d = rp.dim();
  CompensatedSum ito(n);
  std::vector<double> dx(d);
  for (std::size_t k = 0; k < rp.grid().n_steps(); ++k) {
    rp.path().increment(k, k + 1, dx);
    const auto y = cp.y().at(k);
    for (std::size_t a = 0; a < n; ++a) {
      double v = 0.0;
      for (std::size_t c = 0; c < d; ++c) v += y[a * d + c] * dx[c];
      ito.add(a, v);
    }
  }
  EquivalenceReport report;
  report.ito_sum.resize(static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) report.ito_sum(static_cast<Eigen::Index>(a)) = ito.value(a);
  std::vector<double> log_mesh, log_diff;
  for (const Partition& part : partitions) {
    if (part.first() != 0 || part.last() != rp.grid().n_steps())
      throw std::invalid_argument("ito_vs_rough_equivalence: partitions must span the grid");
    const IntegralReport r = gubinelli_integral(cp, rp, part);
    const double diff = (r.value - report.ito_sum).norm();
    report.meshes.push_back(part.mesh());
    report.differences.push_back(diff);
    if (diff > 0.0) {
      log_mesh.push_back(std::log(part.mesh()));
      log_diff.push_back(std::log(diff));
    }
  }
  if (log_mesh.size() >= 3) report.fitted_order = fit_line(log_mesh, log_diff).slope;
  return report;
}

std::vector<Partition> dyadic_sequence(const TimeGrid& grid) {
  std::vector<Partition> out;
  for (unsigned level = 0; level < 63 && grid.n_steps() % (std::size_t{1} << level) == 0; ++level)
    out.push_back(Partition::dyadic(grid, level));
  return out;
}

}  // namespace grp::integral
