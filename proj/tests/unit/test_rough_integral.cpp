#include <catch_amalgamated.hpp>

#include <cmath>

#include "grp/core/norms.hpp"
#include "grp/integral/integral.hpp"
#include "grp/sim/gbm.hpp"
#include "oracles.hpp"

using namespace grp;
using namespace grp::integral;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

GridPath scalar_path(std::vector<double> v) {
  const std::size_t n = v.size() - 1;
  return GridPath(TimeGrid(1.0, n), 1, std::move(v));
}

std::shared_ptr<const RoughPath> ito(const GridPath& b) { return std::make_shared<RoughPath>(sim::ito_lift(b)); }

std::vector<Partition> assorted_partitions(const TimeGrid& grid) {
  std::vector<Partition> out = dyadic_sequence(grid);
  for (std::size_t stride : {3u, 7u, 10u}) out.push_back(Partition::strided(grid, stride));
  for (std::uint64_t seed : {1u, 2u, 3u}) out.push_back(Partition::random(grid, grid.n_steps() / 5, seed));
  return out;
}

}  // namespace

TEST_CASE("partition construction", "[partition]") {
  const TimeGrid grid(1.0, 8);
  CHECK(Partition::dyadic(grid, 2).indices().size() == 5);
  CHECK(Partition::strided(grid, 3).indices().back() == 8);
  CHECK(Partition::strided(grid, 3).mesh() == 3.0 / 8.0);
  const std::vector<double> times{0.0, 0.25, 1.0};
  CHECK(Partition::from_times(grid, times).indices()[1] == 2);
  const std::vector<double> off{0.0, 0.3, 1.0};
  CHECK_THROWS_WITH(Partition::from_times(grid, off), "not grid-aligned");
  CHECK_THROWS_WITH(Partition::dyadic(TimeGrid(1.0, 6), 2), "not grid-aligned");
  CHECK_THROWS_AS(Partition(grid, {0}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(grid, {0, 3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(grid, {0, 9}), std::invalid_argument);
  const auto r = Partition::random(grid, 4, 11);
  CHECK(r.size() == 6);
  CHECK(r.first() == 0);
  CHECK(r.last() == 8);
}

TEST_CASE("constant integrand telescopes", "[integral]") {
  const auto b = oracle::random_walk(64, 1, 3);
  const auto rp = ito(b);
  const auto cp = controlled_lift_smooth(SmoothMap::constant(2.5), rp);
  for (const auto& part : assorted_partitions(b.grid()))
    CHECK_THAT(gubinelli_integral(cp, part).value(0), WithinAbs(2.5 * (b(64, 0) - b(0, 0)), 1e-13));
}

TEST_CASE("identity integrand against the Ito lift is the left-point sum", "[integral]") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto b = oracle::random_walk(120, 1, seed);
    const auto cp = controlled_lift_smooth(SmoothMap::identity(1), ito(b));
    const double expected = oracle::left_sum(b, b);
    for (const auto& part : assorted_partitions(b.grid())) {
      const auto r = gubinelli_integral(cp, part);
      CHECK_THAT(r.value(0), WithinAbs(expected, 1e-12));
      CHECK(r.max_local_error < 1e-12);
    }
  }
}

TEST_CASE("identity integrand on (0,1,3)", "[integral]") {
  const auto path = scalar_path({0, 1, 3});
  const auto ito_rp = ito(path);
  const auto strat = sim::stratonovich_lift(*ito_rp, sim::quadratic_variation(path));
  const auto cp = controlled_lift_smooth(SmoothMap::identity(1), ito_rp);
  const Partition whole(path.grid(), {0, 2});
  CHECK(gubinelli_integral(cp, *ito_rp, whole).value(0) == 2.0);
  CHECK(gubinelli_integral(cp, strat, whole).value(0) == 4.5);
  CHECK(gubinelli_integral(cp, strat, Partition::base(path.grid())).value(0) == 4.5);
}

TEST_CASE("terms add up to the value", "[integral]") {
  const auto b = oracle::random_walk(50, 2, 4);
  const auto cp = controlled_lift_smooth(SmoothMap::identity(2), ito(b));
  const auto r = gubinelli_integral(cp, Partition::strided(b.grid(), 7));
  double s = 0.0;
  for (const auto& t : r.terms) s += t(0);
  CHECK_THAT(r.value(0), WithinAbs(s, 1e-13));
  CHECK(r.terms.size() == 8);
}

TEST_CASE("multidimensional identity integrand matches the brute-force sum", "[integral]") {
  const auto b = oracle::random_walk(90, 3, 21);
  const auto cp = controlled_lift_smooth(SmoothMap::identity(3), ito(b));
  double expected = 0.0;
  for (std::size_t k = 0; k < 90; ++k)
    for (std::size_t c = 0; c < 3; ++c) expected += b(k, c) * (b(k + 1, c) - b(k, c));
  for (const auto& part : assorted_partitions(b.grid()))
    CHECK_THAT(gubinelli_integral(cp, part).value(0), WithinAbs(expected, 1e-12));
}

TEST_CASE("linearity and additivity in time", "[integral]") {
  const auto b = oracle::random_walk(96, 1, 8);
  const auto rp = ito(b);
  const auto sq = controlled_lift_smooth(SmoothMap::square(), rp);
  const auto cube = controlled_lift_smooth(
      SmoothMap::scalar([](double x) { return x * x * x; }, [](double x) { return 3 * x * x; }), rp);
  const auto part = Partition::strided(b.grid(), 6);
  const double vs = gubinelli_integral(sq, part).value(0);
  const double vc = gubinelli_integral(cube, part).value(0);
  const double combined = gubinelli_integral(sq.combine(2.0, cube, -3.0), part).value(0);
  CHECK_THAT(combined, WithinAbs(2.0 * vs - 3.0 * vc, 1e-12 * (std::abs(vs) + std::abs(vc) + 1.0)));

  const Partition left(b.grid(), {0, 12, 24, 36, 48});
  const Partition right(b.grid(), {48, 60, 72, 84, 96});
  const Partition whole(b.grid(), {0, 12, 24, 36, 48, 60, 72, 84, 96});
  const double split = gubinelli_integral(sq, left).value(0) + gubinelli_integral(sq, right).value(0);
  CHECK_THAT(gubinelli_integral(sq, whole).value(0), WithinAbs(split, 1e-12));
}

TEST_CASE("Stratonovich consistency", "[integral]") {
  const auto b = oracle::random_walk(128, 1, 17);
  const auto rp = ito(b);
  const auto qv = sim::quadratic_variation(b);
  const auto strat = sim::stratonovich_lift(*rp, qv);
  const auto cp = controlled_lift_smooth(SmoothMap::square(), rp);
  for (const auto& part : assorted_partitions(b.grid())) {
    const double vi = gubinelli_integral(cp, *rp, part).value(0);
    const double vs = gubinelli_integral(cp, strat, part).value(0);
    double correction = 0.0;
    const auto idx = part.indices();
    for (std::size_t p = 0; p + 1 < idx.size(); ++p)
      correction += 0.5 * cp.y_prime()(idx[p], 0) * (qv.at(idx[p + 1])[0] - qv.at(idx[p])[0]);
    CHECK_THAT(vs, WithinAbs(vi + correction, 1e-12));
  }
}

TEST_CASE("controlled lifts of smooth maps", "[lift]") {
  const auto b = oracle::random_walk(40, 1, 5);
  const auto rp = ito(b);
  const auto id = controlled_lift_smooth(SmoothMap::identity(1), rp);
  CHECK(id.y() == b);
  CHECK(remainder_norm(id, 0.4) == 0.0);
  const auto c = controlled_lift_smooth(SmoothMap::constant(3.0), rp);
  CHECK(remainder_norm(c, 0.4) == 0.0);
  for (double v : c.y_prime().data()) CHECK(v == 0.0);

  const auto sq = controlled_lift_smooth(SmoothMap::square(), rp);
  for (std::size_t i = 0; i < 40; i += 3)
    for (std::size_t j = i + 1; j <= 40; j += 4)
      CHECK_THAT(remainder(sq, i, j)(0, 0), WithinAbs(std::pow(b(j, 0) - b(i, 0), 2), 1e-13));
  const double h = hoelder_norm(b, 0.4);
  CHECK_THAT(remainder_norm(sq, 0.4), WithinRel(h * h, 1e-12));

  // Taylor bound |R| <= 1/2 sup|F''| |X_{s,t}|^2 for F = sin.
  const auto sn = controlled_lift_smooth(SmoothMap::scalar([](double x) { return std::sin(x); },
                                                           [](double x) { return std::cos(x); }), rp);
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = i + 1; j <= 40; ++j)
      CHECK(std::abs(remainder(sn, i, j)(0, 0)) <= 0.5 * std::pow(b(j, 0) - b(i, 0), 2) + 1e-15);

  const auto bad = SmoothMap::scalar([](double x) { return 1.0 / (x - x); }, [](double) { return 0.0; });
  CHECK_THROWS_AS(controlled_lift_smooth(bad, rp), std::invalid_argument);
  CHECK_THROWS_AS(controlled_lift_smooth(SmoothMap::identity(2), rp), std::invalid_argument);
}

TEST_CASE("local error check examples", "[local]") {
  const auto b = oracle::random_walk(64, 1, 2);
  const auto rp = ito(b);
  CHECK(local_error_check(controlled_lift_smooth(SmoothMap::constant(1.5), rp), *rp, 0.4).k_hat == 0.0);
  CHECK(local_error_check(controlled_lift_smooth(SmoothMap::identity(1), rp), *rp, 0.4).k_hat == 0.0);
  CHECK_THROWS_WITH(local_error_check(controlled_lift_smooth(SmoothMap::constant(0.0), rp), *rp, 0.4),
                    "degenerate bound");
  const auto sq = local_error_check(controlled_lift_smooth(SmoothMap::square(), rp), *rp, 0.4);
  CHECK(sq.k_hat > 0.0);
  CHECK(std::isfinite(sq.k_hat));
}

TEST_CASE("local error numerator matches the brute-force cubic sum", "[local]") {
  // For Y = B^2, Y' = 2B against the Ito lift the gap on (s,t) is sum_k B_{s,k}^2 dB_k.
  const auto b = oracle::random_walk(32, 1, 6);
  const auto rp = ito(b);
  const auto r = local_error_check(controlled_lift_smooth(SmoothMap::square(), rp), *rp, 0.4);
  double worst = 0.0;
  for (std::size_t s = 0; s < 32; ++s)
    for (std::size_t t = s + 1; t <= 32; ++t) {
      double gap = 0.0;
      for (std::size_t k = s; k < t; ++k) gap += std::pow(b(k, 0) - b(s, 0), 2) * (b(k + 1, 0) - b(k, 0));
      worst = std::max(worst, std::abs(gap) / std::pow((t - s) / 32.0, 1.2));
    }
  CHECK_THAT(r.k_hat * r.denominator, WithinRel(worst, 1e-9));
}

TEST_CASE("local error constant stays below the calibrated ceiling", "[local][slow]") {
  const TimeGrid grid(1.0, 1u << 12);
  const auto band = sim::VolatilityBand::scalar(0.5, 1.0);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = sim::sample_gbm_path(sim::sample_control(band, sim::ControlKind::piecewise_constant, grid, seed), seed);
    const auto rp = ito(s.b);
    worst = std::max(worst, local_error_check(controlled_lift_smooth(SmoothMap::square(), rp), *rp, 0.4).k_hat);
  }
  CHECK(worst <= 10.0);
}

TEST_CASE("Ito and rough integrals agree", "[equivalence]") {
  const auto b = oracle::random_walk(1u << 10, 1, 12);
  const auto rp = ito(b);
  const auto parts = dyadic_sequence(b.grid());
  const auto id = ito_vs_rough_equivalence(controlled_lift_smooth(SmoothMap::identity(1), rp), *rp, parts);
  for (double d : id.differences) CHECK(d <= 1e-12);
  const auto zero = ito_vs_rough_equivalence(controlled_lift_smooth(SmoothMap::constant(0.0), rp), *rp, parts);
  for (double d : zero.differences) CHECK(d == 0.0);

  const auto sq = ito_vs_rough_equivalence(controlled_lift_smooth(SmoothMap::square(), rp), *rp, parts);
  CHECK(sq.differences.back() <= 1e-8);
  REQUIRE(sq.fitted_order.has_value());
  CHECK(*sq.fitted_order > 0.0);
  CHECK_THROWS_AS(ito_vs_rough_equivalence(controlled_lift_smooth(SmoothMap::square(), rp),
                                           sim::stratonovich_lift(*rp, sim::quadratic_variation(b)), parts),
                  std::invalid_argument);
}
