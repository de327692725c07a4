#pragma once

#include <optional>
#include <span>
#include <string>

#include "grp/core/controlled_path.hpp"
#include "grp/core/grid_path.hpp"
#include "grp/core/rough_path.hpp"

namespace grp::roughness {

struct NorrisReport {
  /// I_t = int_0^t Y dX + int_0^t Z dt on the base grid.
  GridPath i_path;
  double sup_norm_i;
  double sup_norm_y;
  double sup_norm_z;
  /// 1 + 1/L + rough path seminorm + controlled seminorm + |Y_0| + |Y'_0| + ||Z||_alpha,
  /// with L the computable lower bound l_theta_lower (infinite when L = 0).
  double r_quantity;
  double l_theta_lower;
};

struct NorrisParams {
  double theta = 0.55;
  double alpha = 0.4;
  unsigned n_max = 10;
};

/// Throws std::invalid_argument("hypothesis violated") unless theta < 2 alpha.
NorrisReport norris_diagnostic(const ControlledPath& y, const GridPath& z, const RoughPath& rp,
                               const NorrisParams& params);

struct NorrisFit {
  /// log(||Y|| + ||Z||) = log_m + q log R + r log ||I|| when the design has full rank;
  /// otherwise q = 0 and the two-parameter fit is used.
  double log_m;
  double q;
  double r;
  double r_squared;
  bool full_rank;
  /// Two-parameter fit log(||Y|| + ||Z||) = a + r_simple log ||I||.
  double r_simple;
  double r_squared_simple;
};

/// Needs at least three reports with positive norms.
NorrisFit fit_norris_constants(std::span<const NorrisReport> family);

enum class Verdict { pass, fail, inconclusive };
const char* to_string(Verdict v) noexcept;

struct UniquenessReport {
  double i_gap;
  double deviation;
  double tolerance;
  double r_quantity;
  Verdict verdict;
};

/// ||I1 - I2|| <= tol_i ? (deviation <= c M R^q tol_i^r ? PASS : FAIL) : INCONCLUSIVE,
/// where deviation = max(||Y1 - Y2||, ||Z1 - Z2||) and R is computed for the
/// difference pair.
UniquenessReport uniqueness_check(const ControlledPath& y1, const GridPath& z1, const ControlledPath& y2,
                                  const GridPath& z2, const RoughPath& rp, const NorrisParams& params,
                                  const NorrisFit& fit, double tol_i, double c = 1.0);

}  // namespace grp::roughness
