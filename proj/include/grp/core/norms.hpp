#pragma once

#include "grp/core/grid_path.hpp"
#include "grp/core/rough_path.hpp"

namespace grp {

// All Hoelder quantities are suprema over grid pairs s < t, so they are lower
// bounds of the continuous-time norms. Vectors use the Euclidean norm,
// matrices the Frobenius norm.

/// sup_{s<t} |X_{s,t}| / (t-s)^alpha. Requires 0 < alpha <= 1.
double hoelder_norm(const GridPath& path, double alpha);

/// sup_{s<t} |XX_{s,t}| / (t-s)^(2 alpha), XX reconstructed through Chen.
double two_alpha_norm(const RoughPath& rp, double alpha);

/// ||X||_alpha + sqrt(||XX||_{2 alpha}).
double rough_path_seminorm(const RoughPath& rp, double alpha);

namespace detail {
/// (m * h)^(-power) for m = 0..n (entry 0 unused).
std::vector<double> inverse_lag_powers(const TimeGrid& grid, double power);
void check_alpha(double alpha);
}  // namespace detail

}  // namespace grp
