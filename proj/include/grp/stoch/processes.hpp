#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "grp/core/controlled_path.hpp"
#include "grp/core/grid_path.hpp"

namespace grp::stoch {

/// Coefficient handle evaluated at (t, B_t, X_t) on the left end of a step.
using Coefficient = std::function<void(double t, std::span<const double> b, std::span<const double> x,
                                       std::span<double> out)>;

/// X_t = x0 + int beta dB + int alpha ds + int gamma d<B>, m-dimensional, with
/// beta m x d, alpha m, gamma m x d x d (all row-major). Missing handles are zero.
struct ItoProcess {
  std::size_t dim = 1;
  std::vector<double> x0{0.0};
  Coefficient beta;
  Coefficient alpha;
  Coefficient gamma;

  /// X = B (m = d, beta = I).
  static ItoProcess brownian(std::size_t d);
  /// X = c B, scalar.
  static ItoProcess scaled_brownian(double c);
  /// X_t = t, scalar.
  static ItoProcess time();
};

/// Left-point Euler realization along b (exact for the discrete integrals).
GridPath realize(const ItoProcess& process, const GridPath& b);

/// Integrand families for the discrete integrals.
struct IntegrandSpec {
  enum class Kind { constant, coordinate, smooth_of_b, ito_process };
  Kind kind = Kind::coordinate;
  /// constant: the value (size n*d).
  std::vector<double> value;
  /// smooth_of_b: F : R^d -> R^{n*d} and its Jacobian (n*d x d).
  std::size_t out_dim = 1;
  std::function<void(std::span<const double>, std::span<double>)> f;
  std::function<void(std::span<const double>, std::span<double>)> df;
  ItoProcess process;

  static IntegrandSpec constant(std::vector<double> value);
  static IntegrandSpec coordinate();
  static IntegrandSpec smooth_scalar(std::function<double(double)> f, std::function<double(double)> df);
  static IntegrandSpec ito(ItoProcess process);
};

GridPath realize(const IntegrandSpec& spec, const GridPath& b);

/// (Y, Y') over a rough path whose level-1 path is b: Y' is 0, I, DF or beta.
ControlledPath realize_controlled(const IntegrandSpec& spec, std::shared_ptr<const RoughPath> rp);

/// Phi : R^m -> R with gradient (m) and Hessian (m x m row-major).
struct C2Function {
  std::size_t dim = 1;
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
  std::function<void(std::span<const double>, std::span<double>)> hessian;

  static C2Function scalar(std::function<double(double)> f, std::function<double(double)> df,
                           std::function<double(double)> d2f);
  static C2Function power(int p);
  static C2Function affine(double slope, double intercept);
};

struct ItoFormulaResidual {
  /// max_m |Phi(X_{t_m}) - Phi(X_0) - discrete right-hand side up to t_m|.
  double max_residual;
  double terminal_residual;
  std::vector<double> residuals;
};

/// Discrete G-Ito formula: dB term via left-point sums, d<B> terms via the
/// realized covariation Delta B (x) Delta B, dt term via left-point sums.
ItoFormulaResidual ito_formula_residual(const C2Function& phi, const ItoProcess& process, const GridPath& b);

}  // namespace grp::stoch
