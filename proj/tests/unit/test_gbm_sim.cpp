#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "grp/core/chen.hpp"
#include "grp/core/rough_path.hpp"
#include "grp/sim/gbm.hpp"
#include "grp/sim/rng.hpp"
#include "grp/sim/scaling.hpp"
#include "grp/sim/volatility.hpp"
#include "oracles.hpp"

using namespace grp;
using namespace grp::sim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

GridPath scalar_path(std::vector<double> v) {
  const std::size_t n = v.size() - 1;
  return GridPath(TimeGrid(1.0, n), 1, std::move(v));
}

const ConvexityIndicator always_convex = [](double, std::span<const double>) { return true; };

}  // namespace

TEST_CASE("Philox4x32-10 known answers", "[rng]") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("normal quantile", "[rng]") {
  CHECK_THAT(normal_quantile(0.975), WithinRel(1.959963984540054, 1e-14));
  CHECK_THAT(normal_quantile(1e-10), WithinRel(-6.361340902404056, 1e-14));
  CHECK(normal_quantile(0.5) == 0.0);
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
  for (double p = 1e-6; p < 0.5; p *= 1.7) {
    CHECK_THAT(oracle::normal_cdf(normal_quantile(p)), WithinRel(p, 1e-13));
    CHECK_THAT(normal_quantile(1.0 - p), WithinRel(-normal_quantile(p), 1e-9));
  }
}

TEST_CASE("counter rng draws are pure functions of their coordinates", "[rng]") {
  const CounterRng rng(42);
  std::array<double, 3> a{}, b{}, c{};
  rng.normals(Stream::wiener, 7, 11, a);
  rng.normals(Stream::wiener, 7, 11, b);
  rng.normals(Stream::wiener, 8, 11, c);
  CHECK(a == b);
  CHECK(a != c);
  const auto u = rng.uniform_pair(Stream::control, 0, 0);
  CHECK(u[0] > 0.0);
  CHECK(u[0] < 1.0);
  CHECK(u[1] > 0.0);
  CHECK(u[1] < 1.0);
}

TEST_CASE("volatility band validation", "[band]") {
  CHECK_THROWS_AS(VolatilityBand::scalar(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(VolatilityBand::scalar(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(VolatilityBand::scalar(1.0, INFINITY), std::invalid_argument);
  CHECK_THROWS_AS(VolatilityBand::scalar(0.5, 1.0, 1), std::invalid_argument);
  VolatilityBand empty{0.5, 1.0, 2, 2, {}};
  CHECK_THROWS_AS(sample_control(empty, ControlKind::constant, TimeGrid(1.0, 4), 1), std::invalid_argument);
  const auto lattice = VolatilityBand::scalar(0.5, 1.5, 3).lattice();
  CHECK(lattice == std::vector<double>{0.5, 1.0, 1.5});
}

TEST_CASE("sample_control examples", "[control]") {
  const TimeGrid grid(1.0, 64);
  const auto degenerate = VolatilityBand::scalar(1.0, 1.0);
  for (auto kind : {ControlKind::constant, ControlKind::piecewise_constant, ControlKind::feedback_bang_bang}) {
    const auto c = sample_control(degenerate, kind, grid, 3, always_convex);
    for (double a : c.values()) CHECK(a == 1.0);
  }

  const auto band = VolatilityBand::scalar(0.5, 1.0);
  const auto c1 = sample_control(band, ControlKind::constant, grid, 99);
  const auto c2 = sample_control(band, ControlKind::constant, grid, 99);
  CHECK(std::vector<double>(c1.values().begin(), c1.values().end()) ==
        std::vector<double>(c2.values().begin(), c2.values().end()));
  CHECK((c1.at(0)[0] == 0.5 || c1.at(0)[0] == 1.0));
  for (double a : c1.values()) CHECK(a == c1.at(0)[0]);

  const auto fb = sample_control(band, ControlKind::feedback_bang_bang, grid, 5, always_convex);
  for (double a : fb.values()) CHECK(a == 1.0);
  CHECK_THROWS_AS(sample_control(band, ControlKind::feedback_bang_bang, grid, 5), std::invalid_argument);

  // Piecewise draws visit both lattice values.
  const auto pc = sample_control(band, ControlKind::piecewise_constant, grid, 5);
  std::size_t high = 0;
  for (double a : pc.values()) {
    CHECK((a == 0.5 || a == 1.0));
    high += a == 1.0;
  }
  CHECK(high > 10);
  CHECK(high < 54);
}

TEST_CASE("control values must be admissible", "[control]") {
  const auto band = VolatilityBand::scalar(0.5, 1.0);
  CHECK_THROWS_AS(ControlPath(TimeGrid(1.0, 2), band, {0.7, 1.2}, ControlKind::piecewise_constant),
                  std::invalid_argument);
  const auto iso = VolatilityBand::isotropic(0.5, 1.0, 2);
  CHECK_THROWS_AS(ControlPath(TimeGrid(1.0, 1), iso, {0.7, 0.0, 0.0, 0.7}, ControlKind::constant),
                  std::invalid_argument);
  CHECK_NOTHROW(ControlPath(TimeGrid(1.0, 1), iso, {0.5, 0.0, 0.0, 0.5}, ControlKind::constant));
}

TEST_CASE("sample paths are reproducible and start at zero", "[gbm]") {
  const auto band = VolatilityBand::scalar(0.5, 1.5);
  const TimeGrid grid(1.0, 256);
  const auto control = sample_control(band, ControlKind::piecewise_constant, grid, 17);
  const auto s1 = sample_gbm_path(control, 17, 3);
  const auto s2 = sample_gbm_path(control, 17, 3);
  CHECK(s1.b == s2.b);
  CHECK(s1.w == s2.w);
  CHECK(s1.b(0, 0) == 0.0);
  for (std::size_t k = 0; k < grid.n_steps(); ++k) {
    const double dw = s1.w(k + 1, 0) - s1.w(k, 0);
    CHECK_THAT(s1.b(k + 1, 0) - s1.b(k, 0), WithinAbs(control.at(k)[0] * dw, 1e-14));
  }
}

TEST_CASE("feedback control is resolved along the simulated state", "[gbm]") {
  const auto band = VolatilityBand::scalar(0.5, 1.5);
  const TimeGrid grid(1.0, 512);
  const ConvexityIndicator positive = [](double, std::span<const double> x) { return x[0] > 0.0; };
  const auto control = sample_control(band, ControlKind::feedback_bang_bang, grid, 8, positive);
  const auto s = sample_gbm_path(control, 8, 0);
  for (std::size_t k = 0; k < grid.n_steps(); ++k)
    CHECK(s.control.at(k)[0] == (s.b(k, 0) > 0.0 ? 1.5 : 0.5));
}

TEST_CASE("multidimensional paths use gamma matrices", "[gbm]") {
  VolatilityBand band{0.5, 1.0, 2, 2, {}};
  Matrix g(2, 2);
  g << 1.0, 0.0, 0.5, 0.5;
  band.gamma_set.push_back(g);
  const TimeGrid grid(1.0, 32);
  const auto s = sample_gbm_path(sample_control(band, ControlKind::constant, grid, 1), 1);
  for (std::size_t k = 0; k < grid.n_steps(); ++k) {
    const Vector dw = s.w.increment(k, k + 1);
    const Vector db = s.b.increment(k, k + 1);
    CHECK_THAT(db(0), WithinAbs(dw(0), 1e-14));
    CHECK_THAT(db(1), WithinAbs(0.5 * dw(0) + 0.5 * dw(1), 1e-14));
  }
}

TEST_CASE("classical Brownian motion moments at the terminal time", "[gbm][slow]") {
  const auto band = VolatilityBand::scalar(1.0, 1.0);
  const TimeGrid grid(1.0, 1u << 14);
  const auto control = sample_control(band, ControlKind::constant, grid, 2024);
  const std::size_t n_paths = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t p = 0; p < n_paths; ++p) {
    const double x = sample_gbm_path(control, 2024, p).b(grid.n_steps(), 0);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n_paths;
  const double var = (sum2 - n_paths * mean * mean) / (n_paths - 1);
  CHECK(std::abs(mean) <= 4.0 / std::sqrt(static_cast<double>(n_paths)));
  CHECK(var >= 0.96);
  CHECK(var <= 1.04);
}

TEST_CASE("quadratic variation examples", "[qv]") {
  const auto qv = quadratic_variation(scalar_path({0, 1, 3}));
  CHECK(qv.at(0)[0] == 0.0);
  CHECK(qv.at(2)[0] == 5.0);
  const auto flat = quadratic_variation(scalar_path({2, 2, 2, 2}));
  for (std::size_t k = 0; k < 4; ++k) CHECK(flat.at(k)[0] == 0.0);
  const std::size_t n = 50;
  const auto linear = quadratic_variation(GridPath::sample(TimeGrid(1.0, n), 1, [](double t, std::span<double> o) { o[0] = t; }));
  CHECK_THAT(linear.at(n)[0], WithinRel(1.0 / n, 1e-12));
}

TEST_CASE("quadratic variation is monotone with PSD increments", "[qv]") {
  const auto b = oracle::random_walk(200, 3, 5);
  const auto qv = quadratic_variation(b);
  for (std::size_t k = 0; k < 200; ++k) {
    const Matrix inc = qv.increment(k, k + 1);
    CHECK((inc - inc.transpose()).norm() == 0.0);
    CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(inc).eigenvalues().minCoeff() >= -1e-15);
    for (int c = 0; c < 3; ++c) CHECK(qv.at(k + 1)[c * 4] >= qv.at(k)[c * 4]);
  }
}

TEST_CASE("Ito lift examples and identities", "[lift]") {
  const auto rp = ito_lift(scalar_path({0, 1, 3}));
  CHECK(rp.kind() == LiftKind::ito);
  CHECK(reconstruct_level2(rp, 0, 2)(0, 0) == 2.0);
  CHECK(reconstruct_level2(rp, 0, 2)(0, 0) == oracle::left_sum(scalar_path({0, 1, 3}), scalar_path({0, 1, 3})));

  const auto flat = ito_lift(scalar_path({1, 1, 1, 1}));
  CHECK(reconstruct_level2(flat, 0, 3)(0, 0) == 0.0);

  const auto b = oracle::random_walk(40, 2, 9);
  const auto lift = ito_lift(b);
  const auto qv = quadratic_variation(b);
  for (std::size_t i = 0; i < 40; i += 3)
    for (std::size_t j = i + 1; j <= 40; j += 5) {
      const Matrix bb = reconstruct_level2(lift, i, j);
      const Vector inc = b.increment(i, j);
      const Matrix lhs = bb + bb.transpose();
      const Matrix rhs = inc * inc.transpose() - qv.increment(i, j);
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("defining identity of the quadratic variation at 2^14 steps", "[lift]") {
  const auto band = VolatilityBand::scalar(0.5, 1.5);
  const TimeGrid grid(1.0, 1u << 14);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto s = sample_gbm_path(sample_control(band, ControlKind::piecewise_constant, grid, seed), seed);
    const auto lift = ito_lift(s.b);
    const auto qv = quadratic_variation(s.b);
    const double bt = s.b(grid.n_steps(), 0);
    const double bb = reconstruct_level2(lift, 0, grid.n_steps())(0, 0);
    CHECK(std::abs(bt * bt - qv.at(grid.n_steps())[0] - 2.0 * bb) <= 1e-10);
  }
}

TEST_CASE("Stratonovich lift examples and identities", "[lift]") {
  const auto path = scalar_path({0, 1, 3});
  const auto strat = stratonovich_lift(ito_lift(path), quadratic_variation(path));
  CHECK(strat.kind() == LiftKind::stratonovich);
  CHECK(reconstruct_level2(strat, 0, 2)(0, 0) == 4.5);
  CHECK_THROWS_AS(stratonovich_lift(strat, quadratic_variation(path)), std::invalid_argument);
  CHECK_THROWS_AS(stratonovich_lift(ito_lift(path), quadratic_variation(scalar_path({0, 1}))), std::invalid_argument);

  const auto flat = scalar_path({1, 1, 1});
  const auto sflat = stratonovich_lift(ito_lift(flat), quadratic_variation(flat));
  for (double v : sflat.level2().data()) CHECK(v == 0.0);

  const auto b = oracle::random_walk(30, 3, 13);
  const auto ito = ito_lift(b);
  const auto st = stratonovich_lift(ito, quadratic_variation(b));
  for (std::size_t i = 0; i < 30; ++i)
    for (std::size_t j = i + 1; j <= 30; ++j) {
      const Matrix s = reconstruct_level2(st, i, j);
      const Matrix it = reconstruct_level2(ito, i, j);
      const Vector inc = b.increment(i, j);
      const Matrix sym = 0.5 * (s + s.transpose());
      CHECK((sym - 0.5 * inc * inc.transpose()).cwiseAbs().maxCoeff() < 1e-13);
      CHECK(((s - s.transpose()) - (it - it.transpose())).cwiseAbs().maxCoeff() < 1e-13);
    }
  CHECK(chen_defect(st) < 1e-13);
}

TEST_CASE("band bound on windowed quadratic variation", "[qv][slow]") {
  const auto band = VolatilityBand::scalar(0.5, 1.5, 5);
  const TimeGrid grid(1.0, 4096);
  const std::size_t m = 256;
  const double slack = 5.0 * std::sqrt(2.0 / m);
  std::size_t inside = 0, total = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto s = sample_gbm_path(sample_control(band, ControlKind::piecewise_constant, grid, seed), seed);
    const auto qv = quadratic_variation(s.b);
    for (std::size_t k = 0; k + m <= grid.n_steps(); k += m) {
      const double ratio = (qv.at(k + m)[0] - qv.at(k)[0]) / (m * grid.step());
      inside += ratio >= 0.25 * (1 - slack) && ratio <= 2.25 * (1 + slack);
      ++total;
    }
  }
  CHECK(static_cast<double>(inside) >= 0.99 * static_cast<double>(total));
}

TEST_CASE("moment scaling slopes", "[scaling][slow]") {
  ScalingParams params;
  params.n_paths = 200;
  const auto classical = moment_scaling_check(VolatilityBand::scalar(1.0, 1.0), params);
  CHECK(classical.expected_slope == 1.0);
  CHECK_THAT(classical.slope, WithinAbs(1.0, 0.05));

  const auto banded = moment_scaling_check(VolatilityBand::scalar(0.5, 1.5), params);
  CHECK_THAT(banded.slope, WithinAbs(1.0, 0.05));

  params.level = 2;
  const auto level2 = moment_scaling_check(VolatilityBand::scalar(1.0, 1.0), params);
  CHECK(level2.expected_slope == 2.0);
  CHECK_THAT(level2.slope, WithinAbs(2.0, 0.1));

  params.lags = {32, 64};
  CHECK_THROWS_WITH(moment_scaling_check(VolatilityBand::scalar(1.0, 1.0), params), "underdetermined regression");
}
