#include "grp/roughness/norris.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "grp/core/norms.hpp"
#include "grp/integral/integral.hpp"
#include "grp/roughness/roughness.hpp"
#include "grp/util/regression.hpp"

namespace grp::roughness {

namespace {

double euclid(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

NorrisReport norris_diagnostic(const ControlledPath& y, const GridPath& z, const RoughPath& rp,
                               const NorrisParams& params) {
  if (!(params.theta < 2.0 * params.alpha)) throw std::invalid_argument("hypothesis violated");
  if (!(z.grid() == rp.grid()) || z.dim() != y.out_dim()) throw std::invalid_argument("grid mismatch");
  const std::size_t n = y.out_dim();
  const std::size_t steps = rp.grid().n_steps();
  const double h = rp.grid().step();

  const auto terms = integral::gubinelli_integral(y, rp, integral::Partition::base(rp.grid())).terms;
  std::vector<double> i_values((steps + 1) * n, 0.0);
  std::vector<double> sum(n, 0.0), comp(n, 0.0);
  for (std::size_t k = 0; k < steps; ++k)
    for (std::size_t a = 0; a < n; ++a) {
      const double term = terms[k](static_cast<Eigen::Index>(a)) + z(k, a) * h;
      const double t = sum[a] + term;
      comp[a] += std::abs(sum[a]) >= std::abs(term) ? (sum[a] - t) + term : (term - t) + sum[a];
      sum[a] = t;
      i_values[(k + 1) * n + a] = sum[a] + comp[a];
    }
  GridPath i_path(rp.grid(), n, std::move(i_values));

  const double l = dyadic_roughness(rp.path(), params.theta, params.n_max, {}, false).l_theta_lower;
  const double inv_l = l > 0.0 ? 1.0 / l : std::numeric_limits<double>::infinity();
  const double r = 1.0 + inv_l + rough_path_seminorm(rp, params.alpha) + controlled_seminorm(y, params.alpha) +
                   euclid(y.y().at(0)) + euclid(y.y_prime().at(0)) + hoelder_norm(z, params.alpha);
  const double sup_i = i_path.sup_norm();
  return NorrisReport{std::move(i_path), sup_i, y.y().sup_norm(), z.sup_norm(), r, l};
}

NorrisFit fit_norris_constants(std::span<const NorrisReport> family) {
  if (family.size() < 3) throw std::invalid_argument("fit_norris_constants: need at least three reports");
  const auto rows = static_cast<Eigen::Index>(family.size());
  Matrix design(rows, 3);
  Vector target(rows);
  std::vector<double> log_i(family.size()), log_yz(family.size());
  for (Eigen::Index k = 0; k < rows; ++k) {
    const NorrisReport& rep = family[static_cast<std::size_t>(k)];
    const double yz = rep.sup_norm_y + rep.sup_norm_z;
    if (!(yz > 0.0) || !(rep.sup_norm_i > 0.0) || !std::isfinite(rep.r_quantity))
      throw std::invalid_argument("fit_norris_constants: norms must be positive and R finite");
    design(k, 0) = 1.0;
    design(k, 1) = std::log(rep.r_quantity);
    design(k, 2) = std::log(rep.sup_norm_i);
    target(k) = std::log(yz);
    log_i[static_cast<std::size_t>(k)] = design(k, 2);
    log_yz[static_cast<std::size_t>(k)] = target(k);
  }
  const LinearFit simple = fit_line(log_i, log_yz);
  NorrisFit fit{simple.intercept, 0.0, simple.slope, simple.r_squared, false, simple.slope, simple.r_squared};
  if (family.size() >= 4) {
    const MultiFit multi = least_squares(design, target);
    if (multi.full_rank) {
      fit.log_m = multi.coefficients(0);
      fit.q = multi.coefficients(1);
      fit.r = multi.coefficients(2);
      fit.r_squared = multi.r_squared;
      fit.full_rank = true;
    }
  }
  return fit;
}

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

UniquenessReport uniqueness_check(const ControlledPath& y1, const GridPath& z1, const ControlledPath& y2,
                                  const GridPath& z2, const RoughPath& rp, const NorrisParams& params,
                                  const NorrisFit& fit, double tol_i, double c) {
  if (!(tol_i > 0.0)) throw std::invalid_argument("uniqueness_check: tol_i must be positive");
  const ControlledPath dy = y1.combine(1.0, y2, -1.0);
  const GridPath dz = z1.combine(1.0, z2, -1.0);
  const NorrisReport diff = norris_diagnostic(dy, dz, rp, params);
  UniquenessReport out;
  out.i_gap = diff.sup_norm_i;
  out.deviation = std::max(diff.sup_norm_y, diff.sup_norm_z);
  out.r_quantity = diff.r_quantity;
  out.tolerance = c * std::exp(fit.log_m) * std::pow(diff.r_quantity, fit.q) * std::pow(tol_i, fit.r);
  if (out.i_gap > tol_i)
    out.verdict = Verdict::inconclusive;
  else
    out.verdict = out.deviation <= out.tolerance ? Verdict::pass : Verdict::fail;
  return out;
}

}  // namespace grp::roughness
