#include "grp/gexp/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace grp::gexp {

double GFunction::operator()(double a) const {
  band.validate();
  return a >= 0.0 ? 0.5 * band.sigma_high * band.sigma_high * a : 0.5 * band.sigma_low * band.sigma_low * a;
}

double GFunction::operator()(const Matrix& a) const {
  band.validate();
  const auto d = static_cast<Eigen::Index>(band.dim);
  if (a.rows() != d || a.cols() != d) throw std::invalid_argument("g_function: matrix must be d x d");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("g_function: matrix must be symmetric");
  if (band.dim == 1) return (*this)(a(0, 0));
  double best = -std::numeric_limits<double>::infinity();
  for (const Matrix& g : band.gamma_set) best = std::max(best, 0.5 * (a * g * g.transpose()).trace());
  return best;
}

const char* to_string(Method method) noexcept { return method == Method::pde ? "pde" : "mc_sup"; }

double Diagnostics::get(const std::string& key) const {
  for (const auto& [k, v] : values)
    if (k == key) return v;
  return std::numeric_limits<double>::quiet_NaN();
}

ExpectationEstimate negate(ExpectationEstimate upper_of_negated) {
  upper_of_negated.value = -upper_of_negated.value;
  return upper_of_negated;
}

Payoff named_payoff(const std::string& name) {
  if (name == "square") return [](double x) { return x * x; };
  if (name == "neg-square") return [](double x) { return -x * x; };
  if (name == "abs") return [](double x) { return std::abs(x); };
  if (name == "identity") return [](double x) { return x; };
  if (name == "x4") return [](double x) { return x * x * x * x; };
  throw std::invalid_argument("unknown payoff '" + name + "'");
}

}  // namespace grp::gexp
