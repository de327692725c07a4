#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grp/core/grid_path.hpp"
#include "grp/sim/volatility.hpp"

namespace grp::gexp {

using Payoff = std::function<double(double)>;
using VectorPayoff = std::function<double(std::span<const double>)>;

/// G(a) = 1/2 (sigma_high^2 a^+ - sigma_low^2 a^-) in one dimension and
/// G(A) = 1/2 max_{gamma} tr(A gamma gamma^T) over the gamma set otherwise.
struct GFunction {
  sim::VolatilityBand band;

  double operator()(double a) const;
  /// Throws std::invalid_argument for non-symmetric A or a size other than d x d.
  double operator()(const Matrix& a) const;
};

inline double g_function(double a, const sim::VolatilityBand& band) { return GFunction{band}(a); }
inline double g_function(const Matrix& a, const sim::VolatilityBand& band) { return GFunction{band}(a); }

enum class Method { pde, mc_sup };

const char* to_string(Method method) noexcept;

struct Diagnostics {
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::string> warnings;
  std::string note;

  void set(std::string key, double value) { values.emplace_back(std::move(key), value); }
  /// NaN when the key is absent.
  double get(const std::string& key) const;
};

struct ExpectationEstimate {
  double value = 0.0;
  /// 1.96 standard errors of the selected family member; 0 for the PDE.
  double ci_halfwidth = 0.0;
  Method method = Method::pde;
  Diagnostics diagnostics;
};

/// Negates an estimate of the upper expectation of -phi: -E^[-phi].
ExpectationEstimate negate(ExpectationEstimate upper_of_negated);

/// Named payoffs shared by the CLI and tests: square, neg-square, abs,
/// identity, x4.
Payoff named_payoff(const std::string& name);

}  // namespace grp::gexp
