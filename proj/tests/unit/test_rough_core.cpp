#include <catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <random>

#include "grp/core/chen.hpp"
#include "grp/core/controlled_path.hpp"
#include "grp/core/norms.hpp"
#include "grp/core/rough_path.hpp"
#include "oracles.hpp"

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using grp::GridPath;
using grp::LevelTwo;
using grp::LiftKind;
using grp::RoughPath;
using grp::TimeGrid;

namespace {

GridPath path1d(std::vector<double> v, double horizon = 1.0) {
  const std::size_t n = v.size() - 1;
  return GridPath(TimeGrid(horizon, n), 1, std::move(v));
}

RoughPath zero_block_lift(const GridPath& x) {
  return RoughPath(x, LevelTwo::zeros(x.grid().n_steps(), x.dim()), LiftKind::ito);
}

RoughPath random_block_lift(const GridPath& x, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(0.0, 0.01);
  std::vector<double> blocks(x.grid().n_steps() * x.dim() * x.dim());
  for (double& b : blocks) b = nd(gen);
  return RoughPath(x, LevelTwo(x.dim(), blocks), LiftKind::ito);
}

}  // namespace

TEST_CASE("time grid rejects zero steps", "[rough_core]") {
  REQUIRE_THROWS_WITH(TimeGrid(1.0, 0), ContainsSubstring("degenerate grid"));
  REQUIRE_THROWS_AS(TimeGrid(0.0, 4), std::invalid_argument);
  const TimeGrid g(2.0, 8);
  CHECK(g.step() == 0.25);
  CHECK(g.time(8) == 2.0);
}

TEST_CASE("grid path validates shape and finiteness", "[rough_core]") {
  REQUIRE_THROWS_AS(GridPath(TimeGrid(1.0, 2), 1, {0.0, 1.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(GridPath(TimeGrid(1.0, 1), 1, {0.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("hoelder_norm examples", "[rough_core][hoelder]") {
  SECTION("constant path") {
    const std::vector<double> c{3.0, -1.0};
    CHECK(grp::hoelder_norm(GridPath::constant(TimeGrid(1.0, 10), c), 0.4) == 0.0);
  }
  SECTION("X_t = t on four steps, alpha = 1/2") {
    CHECK(grp::hoelder_norm(path1d({0.0, 0.25, 0.5, 0.75, 1.0}), 0.5) == Approx(1.0).epsilon(1e-15));
  }
  SECTION("hat path, alpha = 1/3") {
    CHECK(grp::hoelder_norm(path1d({0.0, 1.0, 0.0}), 1.0 / 3.0) == Approx(1.259921049894873).epsilon(1e-14));
  }
  SECTION("alpha outside (0, 1]") {
    REQUIRE_THROWS_AS(grp::hoelder_norm(path1d({0.0, 1.0}), 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(grp::hoelder_norm(path1d({0.0, 1.0}), 1.5), std::invalid_argument);
  }
}

TEST_CASE("hoelder_norm matches brute force and is homogeneous", "[rough_core][hoelder][property]") {
  const auto seed = GENERATE(range<std::uint64_t>(1, 9));
  const std::size_t dim = 1 + seed % 3;
  const GridPath x = oracle::random_walk(64, dim, seed);
  const double alpha = 0.3 + 0.05 * static_cast<double>(seed % 4);
  const double h = grp::hoelder_norm(x, alpha);
  CHECK(h == Approx(oracle::hoelder(x, alpha)).epsilon(1e-12));

  const double lambda = -2.5;
  CHECK(grp::hoelder_norm(x.combine(lambda, x, 0.0), alpha) == Approx(std::abs(lambda) * h).epsilon(1e-12));

  // T <= 1: (t - s) <= 1, so the ratio grows with alpha.
  double prev = 0.0;
  for (double a : {0.2, 0.3, 0.4, 0.5, 0.7, 1.0}) {
    const double v = grp::hoelder_norm(x, a);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("reconstruct_level2 examples", "[rough_core][chen]") {
  const RoughPath rp = zero_block_lift(path1d({0.0, 1.0, 3.0}));
  CHECK(grp::reconstruct_level2(rp, 0, 2)(0, 0) == 2.0);
  CHECK(grp::reconstruct_level2(rp, 0, 1)(0, 0) == 0.0);
  REQUIRE_THROWS_WITH(grp::reconstruct_level2(rp, 1, 1), ContainsSubstring("empty interval"));
  REQUIRE_THROWS_WITH(grp::reconstruct_level2(rp, 2, 1), ContainsSubstring("empty interval"));

  const RoughPath noisy = random_block_lift(oracle::random_walk(12, 2, 5), 6);
  for (std::size_t k = 0; k < 12; ++k) {
    const grp::Matrix m = grp::reconstruct_level2(noisy, k, k + 1);
    const auto b = noisy.level2().block(k);
    CHECK(m(0, 0) == b[0]);
    CHECK(m(0, 1) == b[1]);
    CHECK(m(1, 0) == b[2]);
    CHECK(m(1, 1) == b[3]);
  }
}

TEST_CASE("reconstruction agrees with the increment double sum and satisfies Chen", "[rough_core][chen][property]") {
  const auto seed = GENERATE(range<std::uint64_t>(11, 17));
  const std::size_t d = 1 + seed % 3;
  const GridPath x = oracle::random_walk(24, d, seed);
  const RoughPath rp = random_block_lift(x, seed + 100);
  std::vector<double> blocks(rp.level2().data().begin(), rp.level2().data().end());
  for (std::size_t i = 0; i < 24; i += 3)
    for (std::size_t j = i + 1; j <= 24; j += 2) {
      const grp::Matrix got = grp::reconstruct_level2(rp, i, j);
      const auto want = oracle::chen_double_sum(x, blocks, i, j);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          CHECK(got(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) ==
                Approx(want[a * d + b]).margin(1e-13));
    }
  // Chen composition on every triple.
  for (std::size_t i = 0; i < 24; ++i)
    for (std::size_t j = i + 1; j < 24; ++j)
      for (std::size_t k = j + 1; k <= 24; k += 5) {
        const grp::Matrix lhs = grp::reconstruct_level2(rp, i, k);
        const grp::Matrix rhs = grp::reconstruct_level2(rp, i, j) + grp::reconstruct_level2(rp, j, k) +
                                x.increment(i, j) * x.increment(j, k).transpose();
        CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
      }
}

TEST_CASE("chen_defect examples", "[rough_core][chen]") {
  SECTION("reconstructed level-2 data") {
    const RoughPath rp = random_block_lift(oracle::random_walk(40, 2, 3), 4);
    const grp::Level2Fn fn = [&](std::size_t i, std::size_t j) { return grp::reconstruct_level2(rp, i, j); };
    CHECK(grp::chen_defect(rp.path(), fn) <= 1e-14);
    CHECK(grp::chen_defect(rp) <= 1e-14);
  }
  SECTION("1D (0,1,2) with identically zero level 2") {
    const GridPath x = path1d({0.0, 1.0, 2.0});
    const grp::Level2Fn zero = [](std::size_t, std::size_t) { return grp::Matrix::Zero(1, 1); };
    CHECK(grp::chen_defect(x, zero) == 1.0);
  }
  SECTION("zero path with zero level 2") {
    const GridPath x = GridPath::zeros(TimeGrid(1.0, 6), 2);
    const grp::Level2Fn zero = [](std::size_t, std::size_t) { return grp::Matrix::Zero(2, 2); };
    CHECK(grp::chen_defect(x, zero) == 0.0);
  }
  SECTION("a single corrupted entry is detected") {
    const RoughPath rp = zero_block_lift(oracle::random_walk(20, 1, 9));
    const grp::Level2Fn bad = [&](std::size_t i, std::size_t j) {
      grp::Matrix m = grp::reconstruct_level2(rp, i, j);
      if (i == 3 && j == 11) m(0, 0) += 0.5;
      return m;
    };
    CHECK(grp::chen_defect(rp.path(), bad) == Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("chen exactness on a 2^14 grid", "[rough_core][chen][property]") {
  const auto seed = GENERATE(21u, 22u);
  const GridPath x = oracle::random_walk(1u << 14, 2, seed);
  const RoughPath rp = random_block_lift(x, seed);
  const double sup = x.sup_norm();
  CHECK(grp::chen_defect(rp) <= 1e-12 * (1.0 + sup * sup));
  const auto anchors = grp::chen_anchor_indices(1u << 14, {});
  CHECK(anchors.front() == 0);
  CHECK(anchors.back() == (1u << 14) - 1);
  CHECK(anchors.size() >= 20);
}

TEST_CASE("two_alpha_norm examples", "[rough_core][norms]") {
  SECTION("zero blocks on a constant path") {
    const std::vector<double> c{1.0, 2.0};
    CHECK(grp::two_alpha_norm(zero_block_lift(GridPath::constant(TimeGrid(1.0, 8), c)), 0.4) == 0.0);
  }
  SECTION("(0,1,3) Ito lift") {
    CHECK(grp::two_alpha_norm(zero_block_lift(path1d({0.0, 1.0, 3.0})), 1.0 / 3.0) == Approx(2.0).epsilon(1e-15));
  }
  SECTION("doubling the blocks on a constant path doubles the norm") {
    const std::vector<double> c{0.5, -0.5};
    const RoughPath rp = random_block_lift(GridPath::constant(TimeGrid(1.0, 16), c), 77);
    const RoughPath doubled(rp.path(), rp.level2().scaled(2.0), LiftKind::ito);
    CHECK(grp::two_alpha_norm(doubled, 0.4) == Approx(2.0 * grp::two_alpha_norm(rp, 0.4)).epsilon(1e-14));
  }
}

TEST_CASE("rough_path_seminorm examples", "[rough_core][norms]") {
  const std::vector<double> c{0.0};
  CHECK(grp::rough_path_seminorm(zero_block_lift(GridPath::constant(TimeGrid(1.0, 4), c)), 0.4) == 0.0);
  // Pairs: 1/0.5^(1/3), 2/0.5^(1/3), 3/1 -> level 1 = 3; level 2 = 2.
  CHECK(grp::rough_path_seminorm(zero_block_lift(path1d({0.0, 1.0, 3.0})), 1.0 / 3.0) ==
        Approx(3.0 + std::sqrt(2.0)).epsilon(1e-14));

  const GridPath x = oracle::random_walk(32, 2, 8);
  const RoughPath rp = random_block_lift(x, 9);
  const double lambda = 3.0;
  const RoughPath scaled(x.combine(lambda, x, 0.0), rp.level2().scaled(lambda * lambda), LiftKind::ito);
  CHECK(grp::rough_path_seminorm(scaled, 0.4) == Approx(lambda * grp::rough_path_seminorm(rp, 0.4)).epsilon(1e-12));
}

TEST_CASE("remainder examples", "[rough_core][controlled]") {
  const GridPath b = oracle::random_walk(30, 1, 31);
  auto base = std::make_shared<const RoughPath>(zero_block_lift(b));
  const TimeGrid g = b.grid();

  SECTION("Y = X with Y' = identity") {
    const grp::ControlledPath cp(b, GridPath::constant(g, std::vector<double>{1.0}), base, 1);
    for (std::size_t i = 0; i < 30; i += 4)
      for (std::size_t j = i + 1; j <= 30; j += 3) CHECK(grp::remainder(cp, i, j)(0, 0) == 0.0);
    CHECK(grp::remainder_norm(cp, 0.4) == 0.0);
  }
  SECTION("constant Y with zero derivative") {
    const grp::ControlledPath cp(GridPath::constant(g, std::vector<double>{2.0}), GridPath::zeros(g, 1), base, 1);
    CHECK(grp::remainder_norm(cp, 0.4) == 0.0);
  }
  SECTION("Y = B^2, Y' = 2B") {
    const GridPath y = GridPath::sample(g, 1, [&](double t, std::span<double> out) {
      const auto k = static_cast<std::size_t>(std::llround(t * 30.0));
      out[0] = b(k, 0) * b(k, 0);
    });
    const grp::ControlledPath cp(y, b.combine(2.0, b, 0.0), base, 1);
    for (std::size_t i = 0; i < 30; i += 2)
      for (std::size_t j = i + 1; j <= 30; j += 3) {
        const double inc = b(j, 0) - b(i, 0);
        CHECK(grp::remainder(cp, i, j)(0, 0) == Approx(inc * inc).margin(1e-14));
      }
    const double hx = grp::hoelder_norm(b, 0.4);
    CHECK(grp::remainder_norm(cp, 0.4) == Approx(hx * hx).epsilon(1e-10));
  }
  SECTION("dimension mismatch") {
    REQUIRE_THROWS_WITH(grp::ControlledPath(GridPath::zeros(g, 2), GridPath::zeros(g, 1), base, 1),
                        ContainsSubstring("dimension mismatch"));
    REQUIRE_THROWS_AS(grp::ControlledPath(b, GridPath::zeros(g, 3), base, 1), std::invalid_argument);
  }
}
