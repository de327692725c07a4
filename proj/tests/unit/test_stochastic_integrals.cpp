#include <catch_amalgamated.hpp>

#include <cmath>

#include "grp/integral/integral.hpp"
#include "grp/sim/gbm.hpp"
#include "grp/stoch/integrals.hpp"
#include "grp/stoch/processes.hpp"
#include "oracles.hpp"

using namespace grp;
using namespace grp::stoch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using integral::Partition;

namespace {

GridPath gbm(std::size_t n, std::uint64_t seed, double lo = 0.5, double hi = 1.0) {
  const auto band = sim::VolatilityBand::scalar(lo, hi);
  const TimeGrid grid(1.0, n);
  return sim::sample_gbm_path(sim::sample_control(band, sim::ControlKind::piecewise_constant, grid, seed), seed).b;
}

double sup_abs(const GridPath& p) { return p.sup_norm(); }

}  // namespace

TEST_CASE("Ito integral examples", "[ito]") {
  const auto b = gbm(1024, 1);
  const auto ones = GridPath::constant(b.grid(), std::vector<double>{1.0});
  const auto i1 = ito_integral(ones, b);
  for (std::size_t k = 0; k <= 1024; ++k) CHECK_THAT(i1(k, 0), WithinAbs(b(k, 0), 1e-13));

  const auto ib = ito_integral(b, b);
  const auto qv = sim::quadratic_variation(b);
  for (std::size_t k = 0; k <= 1024; k += 64)
    CHECK_THAT(ib(k, 0), WithinAbs(0.5 * (b(k, 0) * b(k, 0) - qv.at(k)[0]), 1e-13));

  const std::size_t n = 40;
  const auto t = GridPath::sample(TimeGrid(1.0, n), 1, [](double s, std::span<double> o) { o[0] = s; });
  CHECK_THAT(ito_integral(t, t)(n, 0), WithinAbs(0.5 - 0.5 / n, 1e-15));

  CHECK_THROWS_WITH(ito_integral(GridPath::zeros(TimeGrid(1.0, 3), 1), b), "grid mismatch");
  CHECK_THROWS_AS(ito_integral(GridPath::zeros(b.grid(), 3), oracle::random_walk(1024, 2, 1)), std::invalid_argument);
}

TEST_CASE("Ito integral with matrix integrands", "[ito]") {
  const auto b = oracle::random_walk(64, 2, 3);
  const auto y = oracle::random_walk(64, 4, 4);  // 2 x 2 integrand
  const auto out = ito_integral(y, b);
  REQUIRE(out.dim() == 2);
  for (std::size_t a = 0; a < 2; ++a) {
    double s = 0.0;
    for (std::size_t k = 0; k < 64; ++k)
      for (std::size_t c = 0; c < 2; ++c) s += y(k, a * 2 + c) * (b(k + 1, c) - b(k, c));
    CHECK_THAT(out(64, a), WithinAbs(s, 1e-13));
  }
}

TEST_CASE("cross variation examples", "[cross]") {
  const auto b = gbm(512, 2);
  const auto c = cross_variation(GridPath::constant(b.grid(), std::vector<double>{3.0}), b);
  for (std::size_t k = 0; k <= 512; ++k) CHECK(c.at(k)[0] == 0.0);
  const auto self = cross_variation(b, b);
  const auto qv = sim::quadratic_variation(b);
  for (std::size_t k = 0; k <= 512; ++k) CHECK(self.at(k)[0] == qv.at(k)[0]);
  const auto y2 = realize(ItoProcess::scaled_brownian(2.0), b);
  const auto c2 = cross_variation(y2, b);
  for (std::size_t k = 0; k <= 512; ++k) CHECK_THAT(c2.at(k)[0], WithinAbs(2.0 * qv.at(k)[0], 1e-14));
}

TEST_CASE("cross variation bilinearity and polarization", "[cross]") {
  const auto b = oracle::random_walk(200, 2, 5);
  const auto y = oracle::random_walk(200, 2, 6);
  const auto z = oracle::random_walk(200, 2, 7);
  const auto lhs = cross_variation(y.combine(2.0, z, -0.5), b);
  const auto ry = cross_variation(y, b), rz = cross_variation(z, b);
  for (std::size_t k = 0; k <= 200; k += 10)
    CHECK((lhs.value(k) - (2.0 * ry.value(k) - 0.5 * rz.value(k))).cwiseAbs().maxCoeff() < 1e-13);

  const auto s = y.combine(1.0, b, 1.0);
  const auto ss = cross_variation(s, s), yy = cross_variation(y, y), bb = cross_variation(b, b);
  const auto yb = cross_variation(y, b), by = cross_variation(b, y);
  for (std::size_t k = 0; k <= 200; k += 10)
    CHECK((ss.value(k) - yy.value(k) - bb.value(k) - yb.value(k) - by.value(k)).cwiseAbs().maxCoeff() < 1e-13);
  const auto y1 = oracle::random_walk(200, 1, 8), b1 = oracle::random_walk(200, 1, 9);
  const auto s1 = y1.combine(1.0, b1, 1.0);
  const double pol = cross_variation(s1, s1).at(200)[0] - cross_variation(y1, y1).at(200)[0] -
                     cross_variation(b1, b1).at(200)[0];
  CHECK_THAT(pol, WithinAbs(2.0 * cross_variation(y1, b1).at(200)[0], 1e-13));
}

TEST_CASE("Stratonovich integral examples", "[strat]") {
  const auto b = gbm(2048, 3);
  const auto ones = GridPath::constant(b.grid(), std::vector<double>{1.0});
  CHECK_THAT(stratonovich_integral(ones, b)(2048, 0), WithinAbs(b(2048, 0), 1e-13));
  const auto sb = stratonovich_integral(b, b);
  for (std::size_t k = 0; k <= 2048; k += 128) CHECK_THAT(sb(k, 0), WithinAbs(0.5 * b(k, 0) * b(k, 0), 1e-12));
  const auto base = Partition::base(b.grid());
  const auto y = realize(IntegrandSpec::smooth_scalar([](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }), b);
  CHECK_THAT(midpoint_sum(y, b, base)(0), WithinAbs(stratonovich_integral(y, b)(2048, 0), 1e-12));
  const auto diff = stratonovich_integral(y, b).combine(1.0, ito_integral(y, b), -1.0);
  const auto half_cross = cross_variation(y, b).contracted();
  for (std::size_t k = 0; k <= 2048; k += 64) CHECK_THAT(diff(k, 0), WithinAbs(0.5 * half_cross(k, 0), 1e-13));
}

TEST_CASE("midpoint sums", "[strat]") {
  const auto b = gbm(1024, 4);
  const auto parts = integral::dyadic_sequence(b.grid());
  const auto rb = midpoint_convergence(b, b, parts);
  for (double g : rb.gaps) CHECK(g <= 1e-12);
  const auto rc = midpoint_convergence(GridPath::constant(b.grid(), std::vector<double>{2.0}), b, parts);
  for (double g : rc.gaps) CHECK(g <= 1e-13);
  const auto y2 = realize(IntegrandSpec::ito(ItoProcess::scaled_brownian(2.0)), b);
  const auto r2 = midpoint_convergence(y2, b, parts);
  for (double g : r2.gaps) CHECK(g <= 1e-12);
  const auto qv = sim::quadratic_variation(b);
  CHECK_THAT(r2.stratonovich_value(0), WithinAbs(ito_integral(y2, b)(1024, 0) + qv.at(1024)[0], 1e-12));
}

TEST_CASE("midpoint sums of a nonlinear integrand converge", "[strat]") {
  const auto spec = IntegrandSpec::smooth_scalar([](double x) { return std::sin(3 * x); },
                                                 [](double x) { return 3 * std::cos(3 * x); });
  const TimeGrid grid(1.0, 4096);
  const auto parts = integral::dyadic_sequence(grid);
  std::vector<double> mean_gap(parts.size(), 0.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto b = gbm(4096, seed);
    const auto r = midpoint_convergence(realize(spec, b), b, parts);
    for (std::size_t i = 0; i < parts.size(); ++i) mean_gap[i] += r.gaps[i] / 20.0;
    CHECK(r.gaps.back() <= 1e-12);
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    lx.push_back(std::log(parts[i].mesh()));
    ly.push_back(std::log(mean_gap[i]));
  }
  CHECK(oracle::slope(lx, ly) >= 0.5);
}

TEST_CASE("drift has vanishing cross variation", "[cross][slow]") {
  // Coarse partitions on one fine grid.
  const TimeGrid grid(1.0, 4096);
  const auto parts = integral::dyadic_sequence(grid);
  std::vector<double> mean_abs(parts.size(), 0.0);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto b = gbm(4096, seed);
    const auto y = realize(ItoProcess::time(), b);
    for (std::size_t i = 0; i < parts.size(); ++i) mean_abs[i] += std::abs(coarse_cross_variation(y, b, parts[i])(0, 0));
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    lx.push_back(std::log(parts[i].mesh()));
    ly.push_back(std::log(mean_abs[i] / 100.0));
  }
  CHECK(oracle::slope(lx, ly) >= 0.5);

  // Base-grid value against N.
  std::vector<double> ln, lv;
  for (std::size_t n = 256; n <= 4096; n *= 2) {
    double s = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto b = gbm(n, seed);
      s += std::abs(cross_variation(realize(ItoProcess::time(), b), b).at(n)[0]);
    }
    ln.push_back(std::log(static_cast<double>(n)));
    lv.push_back(std::log(s / 100.0));
  }
  CHECK(-oracle::slope(ln, lv) >= 0.4);
}

TEST_CASE("Ito processes realize their coefficients", "[process]") {
  const auto b = gbm(256, 9);
  const auto qv = sim::quadratic_variation(b);
  ItoProcess p;
  p.x0 = {0.5};
  p.gamma = [](double, std::span<const double>, std::span<const double>, std::span<double> out) { out[0] = 1.0; };
  p.alpha = [](double, std::span<const double>, std::span<const double>, std::span<double> out) { out[0] = -2.0; };
  const auto x = realize(p, b);
  for (std::size_t k = 0; k <= 256; k += 16)
    CHECK_THAT(x(k, 0), WithinAbs(0.5 + qv.at(k)[0] - 2.0 * b.grid().time(k), 1e-13));
  const auto id = realize(ItoProcess::brownian(1), b);
  for (std::size_t k = 0; k <= 256; ++k) CHECK_THAT(id(k, 0), WithinAbs(b(k, 0), 1e-13));
  ItoProcess bad;
  bad.x0 = {};
  CHECK_THROWS_AS(realize(bad, b), std::invalid_argument);
}

TEST_CASE("controlled integrand from an Ito process", "[process]") {
  // Y = int f(B) dB with Y' = f(B), integrated against the Ito lift.
  const auto b = gbm(512, 10);
  const auto rp = std::make_shared<RoughPath>(sim::ito_lift(b));
  ItoProcess p;
  p.beta = [](double, std::span<const double> bt, std::span<const double>, std::span<double> out) { out[0] = std::cos(bt[0]); };
  const auto cp = realize_controlled(IntegrandSpec::ito(p), rp);
  const double reference = ito_integral(cp.y(), b)(512, 0);
  const auto r = integral::gubinelli_integral(cp, Partition::base(b.grid()));
  CHECK_THAT(r.value(0), WithinAbs(reference, 1e-12));
  for (std::size_t k = 0; k <= 512; k += 32) CHECK(cp.y_prime()(k, 0) == std::cos(b(k, 0)));
  const auto coarse = integral::gubinelli_integral(cp, Partition::dyadic(b.grid(), 5));
  CHECK(std::abs(coarse.value(0) - reference) < 0.1);

  const auto coord = realize_controlled(IntegrandSpec::coordinate(), rp);
  CHECK(coord.y_prime()(7, 0) == 1.0);
  const auto cst = realize_controlled(IntegrandSpec::constant({4.0}), rp);
  CHECK(cst.y_prime()(7, 0) == 0.0);
}

TEST_CASE("G-Ito formula residual", "[ito_formula]") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto b = gbm(1u << 14, seed, 0.5, 1.5);
    CHECK(ito_formula_residual(C2Function::affine(2.0, -1.0), ItoProcess::brownian(1), b).max_residual <= 1e-12);
    CHECK(ito_formula_residual(C2Function::power(2), ItoProcess::brownian(1), b).max_residual <= 1e-12);
    ItoProcess drifted = ItoProcess::scaled_brownian(0.7);
    drifted.alpha = [](double t, std::span<const double>, std::span<const double>, std::span<double> out) { out[0] = t; };
    CHECK(ito_formula_residual(C2Function::affine(-3.0, 1.0), drifted, b).max_residual <= 1e-12);
  }
}

TEST_CASE("G-Ito formula residual for the cube matches its brute-force form", "[ito_formula]") {
  // Phi = x^3, X = B: residual at t_m is sum_{k<m} (Delta B_k)^3.
  const auto b = gbm(300, 12);
  const auto r = ito_formula_residual(C2Function::power(3), ItoProcess::brownian(1), b);
  double s = 0.0;
  for (std::size_t k = 0; k < 300; ++k) {
    s += std::pow(b(k + 1, 0) - b(k, 0), 3);
    CHECK_THAT(r.residuals[k + 1], WithinAbs(s, 1e-13));
  }
}

TEST_CASE("G-Ito formula residual for the cube stays in the calibrated envelope", "[ito_formula][slow]") {
  std::size_t inside = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto b = gbm(1u << 14, seed, 0.5, 1.5);
    const double r = ito_formula_residual(C2Function::power(3), ItoProcess::brownian(1), b).max_residual;
    inside += r <= 5e-2 * (1.0 + std::pow(sup_abs(b), 3));
  }
  CHECK(inside >= 95);
}

TEST_CASE("G-Ito formula in two dimensions", "[ito_formula]") {
  // X = B in R^2, Phi(x) = x1 x2: exact on the grid (realized covariation).
  const auto b = oracle::random_walk(500, 2, 13);
  C2Function phi;
  phi.dim = 2;
  phi.value = [](std::span<const double> x) { return x[0] * x[1]; };
  phi.gradient = [](std::span<const double> x, std::span<double> g) { g[0] = x[1]; g[1] = x[0]; };
  phi.hessian = [](std::span<const double>, std::span<double> h) { h[0] = 0; h[1] = 1; h[2] = 1; h[3] = 0; };
  CHECK(ito_formula_residual(phi, ItoProcess::brownian(2), b).max_residual <= 1e-12);
}
