#include "grp/harness/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>

#include "grp/core/chen.hpp"
#include "grp/gexp/monte_carlo.hpp"
#include "grp/gexp/pde.hpp"
#include "grp/harness/run.hpp"
#include "grp/integral/integral.hpp"
#include "grp/roughness/norris.hpp"
#include "grp/roughness/roughness.hpp"
#include "grp/sim/scaling.hpp"
#include "grp/stoch/integrals.hpp"
#include "grp/stoch/processes.hpp"

namespace grp::harness {

namespace {

namespace fs = std::filesystem;

struct Scale {
  std::size_t n_seeds;
  std::size_t n_steps;
  std::size_t mc_paths;
  std::size_t tail_seeds;
  std::size_t norris_seeds;
};

Scale scale_of(bool quick) {
  if (quick) return {10, 1u << 12, 2000, 30, 1};
  return {100, 1u << 14, 10000, 100, 2};
}

struct Outcome {
  bool passed;
  std::string measured;
  std::string threshold;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string count(std::size_t k, std::size_t n) { return std::to_string(k) + "/" + std::to_string(n); }

std::size_t share(double fraction, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
}

GridPath gbm(std::size_t n_steps, std::uint64_t seed, double lo, double hi) {
  const auto band = sim::VolatilityBand::scalar(lo, hi);
  const TimeGrid grid(1.0, n_steps);
  return sim::sample_gbm_path(sim::sample_control(band, sim::ControlKind::piecewise_constant, grid, seed), seed).b;
}

double sup_abs(const GridPath& b) { return b.sup_norm(); }

std::vector<integral::Partition> test_partitions(const TimeGrid& grid, std::uint64_t seed) {
  auto parts = integral::dyadic_sequence(grid);
  parts.push_back(integral::Partition::base(grid));
  for (std::size_t stride : {3, 7, 100}) parts.push_back(integral::Partition::strided(grid, stride));
  for (std::size_t interior : {1, 17, 250, 2000})
    if (interior < grid.n_steps()) parts.push_back(integral::Partition::random(grid, interior, seed * 31 + interior));
  return parts;
}

Outcome chen_exactness(const Scale& s, std::uint64_t seed0) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.n_seeds; ++i) {
    const auto b = gbm(s.n_steps, seed0 + i, 0.5, 1.0);
    const auto ito = sim::ito_lift(b);
    const auto strat = sim::stratonovich_lift(ito, sim::quadratic_variation(b));
    const double scale = 1.0 + std::pow(sup_abs(b), 2);
    worst = std::max({worst, chen_defect(ito) / scale, chen_defect(strat) / scale});
  }
  return {worst <= 1e-12, "max defect/(1+|B|^2)=" + num(worst), "<= 1e-12"};
}

Outcome qv_identity(const Scale& s, std::uint64_t seed0) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.n_seeds; ++i) {
    const auto b = gbm(s.n_steps, seed0 + i, 0.5, 1.0);
    const std::size_t n = b.grid().n_steps();
    const double ito = stoch::ito_integral(b, b)(n, 0);
    const double qv = sim::quadratic_variation(b).at(n)[0];
    worst = std::max(worst, std::abs(b(n, 0) * b(n, 0) - 2.0 * ito - qv));
  }
  return {worst <= 1e-10, "max |B_T^2 - 2 ItoSum - <B>_T|=" + num(worst), "<= 1e-10"};
}

Outcome ito_as_rough(const Scale& s, std::uint64_t seed0) {
  double worst = 0.0;
  for (std::size_t i = 0; i < s.n_seeds; ++i) {
    const auto b = gbm(s.n_steps, seed0 + i, 0.5, 1.0);
    const std::shared_ptr<const RoughPath> rp = std::make_shared<RoughPath>(sim::ito_lift(b));
    const auto cp = integral::controlled_lift_smooth(integral::SmoothMap::identity(1), rp);
    const auto parts = test_partitions(b.grid(), seed0 + i);
    const auto r = integral::ito_vs_rough_equivalence(cp, *rp, parts);
    for (double d : r.differences) worst = std::max(worst, d);
  }
  return {worst <= 1e-12, "max |rough - Ito sum|=" + num(worst), "<= 1e-12"};
}

Outcome stratonovich_chain(const Scale& s, std::uint64_t seed0) {
  double worst_half = 0.0, worst_rough = 0.0;
  for (std::size_t i = 0; i < s.n_seeds; ++i) {
    const auto b = gbm(s.n_steps, seed0 + i, 0.5, 1.0);
    const std::size_t n = b.grid().n_steps();
    const double strat = stoch::stratonovich_integral(b, b)(n, 0);
    worst_half = std::max(worst_half, std::abs(strat - 0.5 * b(n, 0) * b(n, 0)));

    const auto ito = sim::ito_lift(b);
    const std::shared_ptr<const RoughPath> rp =
        std::make_shared<RoughPath>(sim::stratonovich_lift(ito, sim::quadratic_variation(b)));
    const auto cp = integral::controlled_lift_smooth(integral::SmoothMap::identity(1), rp);
    const double target = stoch::ito_integral(b, b)(n, 0) + 0.5 * stoch::cross_variation(b, b).contracted()(n, 0);
    for (const auto& part : test_partitions(b.grid(), seed0 + i))
      worst_rough = std::max(worst_rough, std::abs(integral::gubinelli_integral(cp, part).value(0) - target));
  }
  const double worst = std::max(worst_half, worst_rough);
  return {worst <= 1e-10, "max |strat - B_T^2/2|=" + num(worst_half) + " max |rough strat - (Ito + <Y,B>/2)|=" +
                              num(worst_rough),
          "<= 1e-10"};
}

double rel(double v, double ref) { return std::abs(v - ref) / std::abs(ref); }

Outcome gexp_anchors(const Scale&, std::uint64_t) {
  double worst_anchor = 0.0;
  for (auto [lo, hi] : {std::pair{0.5, 1.0}, std::pair{1.0, 2.0}, std::pair{1.0, 1.0}}) {
    gexp::GHeatProblem p;
    p.phi = gexp::named_payoff("square");
    p.band = sim::VolatilityBand::scalar(lo, hi);
    worst_anchor = std::max({worst_anchor, rel(gexp::pde_upper_expectation(p).value, hi * hi),
                             rel(gexp::pde_lower_expectation(p).value, lo * lo)});
  }
  double worst_oracle = 0.0;
  const std::pair<const char*, double> oracles[] = {
      {"square", 1.0}, {"abs", std::sqrt(2.0 / std::numbers::pi)}, {"x4", 3.0}};
  for (const auto& [name, exact] : oracles) {
    gexp::GHeatProblem p;
    p.phi = gexp::named_payoff(name);
    p.band = sim::VolatilityBand::scalar(1.0, 1.0);
    worst_oracle = std::max(worst_oracle, rel(gexp::pde_upper_expectation(p).value, exact));
  }
  return {worst_anchor <= 0.01 && worst_oracle <= 0.005,
          "anchor rel err=" + num(worst_anchor) + " gaussian rel err=" + num(worst_oracle), "<= 1% / <= 0.5%"};
}

Outcome method_agreement(const Scale& s, std::uint64_t seed0) {
  const auto band = sim::VolatilityBand::scalar(0.5, 1.0);
  double worst_ratio = 0.0;
  std::string detail;
  for (const char* name : {"square", "neg-square", "x4"}) {
    const auto phi = gexp::named_payoff(name);
    gexp::GHeatProblem p;
    p.phi = phi;
    p.band = band;
    const double pde = gexp::pde_upper_expectation(p).value;
    const gexp::McParams mp{s.mc_paths, 64, 1.0, seed0};
    const auto mc = gexp::mc_upper_expectation(phi, band, gexp::bang_bang_family(band, gexp::payoff_convexity(phi)), mp);
    const double tol = std::max(0.01 * std::abs(pde), 3.0 * mc.ci_halfwidth);
    const double ratio = std::abs(mc.value - pde) / tol;
    worst_ratio = std::max(worst_ratio, ratio);
    detail += std::string(detail.empty() ? "" : " ") + name + ":" + num(std::abs(mc.value - pde)) + "/" + num(tol);
  }
  return {worst_ratio <= 1.0, "|mc-pde|/tol " + detail, "<= max(1%, 3 CI)"};
}

Outcome kolmogorov_scaling(const Scale& s, std::uint64_t seed0) {
  double worst1 = 0.0, worst2 = 0.0;
  for (auto [lo, hi] : {std::pair{0.5, 1.0}, std::pair{1.0, 1.0}, std::pair{0.2, 1.5}}) {
    sim::ScalingParams p;
    p.seed = seed0;
    if (s.n_seeds < 100) p.n_paths = 50;
    p.level = 1;
    worst1 = std::max(worst1, std::abs(sim::moment_scaling_check(sim::VolatilityBand::scalar(lo, hi), p).slope - 1.0));
    p.level = 2;
    worst2 = std::max(worst2, std::abs(sim::moment_scaling_check(sim::VolatilityBand::scalar(lo, hi), p).slope - 2.0));
  }
  return {worst1 <= 0.05 && worst2 <= 0.1, "max |slope-1|=" + num(worst1) + " max |slope-2|=" + num(worst2),
          "<= 0.05 / <= 0.1"};
}

Outcome roughness_threshold(const Scale& s, std::uint64_t seed0) {
  std::size_t positive = 0, decaying = 0;
  for (std::size_t i = 0; i < s.n_seeds; ++i) {
    const auto b = gbm(s.n_steps, seed0 + i, 0.5, 1.0);
    positive += roughness::dyadic_roughness(b, 0.55, 10, {}, false).l_theta_lower > 0.0;
    decaying += roughness::dyadic_roughness(b, 0.45, 10, {}, false).decay_slope < 0.0;
  }
  return {positive == s.n_seeds && decaying >= share(0.95, s.n_seeds),
          "L>0 at 0.55: " + count(positive, s.n_seeds) + " decay at 0.45: " + count(decaying, s.n_seeds),
          "all / >= 95%"};
}

Outcome tail_shape(const Scale& s, std::uint64_t seed0) {
  const std::vector<sim::VolatilityBand> bands{sim::VolatilityBand::scalar(0.5, 1.0)};
  std::vector<double> eps;
  for (int i = 0; i <= 14; ++i) eps.push_back(0.06 + 0.005 * i);
  roughness::TailParams p;
  p.n_seeds = s.tail_seeds;
  p.seed = seed0;
  const auto r = roughness::roughness_tail_experiment(bands, eps, p);
  if (!r.slope || !r.r_squared)
    return {false, "fit undefined (" + std::to_string(r.fitted_points) + " points)", "slope < 0, R^2 >= 0.8"};
  return {*r.slope < 0.0 && *r.r_squared >= 0.8,
          "slope=" + num(*r.slope) + " R^2=" + num(*r.r_squared) + " points=" + std::to_string(r.fitted_points),
          "slope < 0, R^2 >= 0.8"};
}

Outcome norris_scaling(const Scale& s, std::uint64_t seed0) {
  const roughness::NorrisParams params{0.55, 0.4, 10};
  double min_r = INFINITY, min_r2 = INFINITY, worst_dev = 0.0;
  for (std::size_t i = 0; i < s.norris_seeds; ++i) {
    const auto b = gbm(s.n_steps, seed0 + i, 0.5, 1.0);
    const std::shared_ptr<const RoughPath> rp = std::make_shared<RoughPath>(sim::ito_lift(b));
    const auto ident = integral::controlled_lift_smooth(integral::SmoothMap::identity(1), rp);
    auto constant = [&](double v) { return GridPath::constant(b.grid(), std::vector<double>{v}); };
    std::vector<roughness::NorrisReport> family;
    for (double lambda : {1.0, 1e-1, 1e-2, 1e-3, 1e-4})
      family.push_back(roughness::norris_diagnostic(ident.scaled(lambda), constant(lambda), *rp, params));
    const auto fit = roughness::fit_norris_constants(family);
    min_r = std::min(min_r, fit.full_rank ? fit.r : fit.r_simple);
    min_r2 = std::min(min_r2, fit.full_rank ? fit.r_squared : fit.r_squared_simple);

    const auto y1 = integral::controlled_lift_smooth(
        integral::SmoothMap::scalar([](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }), rp);
    const auto z1 = constant(0.3);
    for (double lambda : {1e-6, 1e-8}) {
      const auto y2 = y1.combine(1.0, ident.scaled(lambda), 1.0);
      const auto z2 = z1.combine(1.0, constant(lambda), 1.0);
      const auto u = roughness::uniqueness_check(y1, z1, y2, z2, *rp, params, fit, 1e-5);
      worst_dev = std::max(worst_dev, u.deviation / (1.0 + sup_abs(b)));
    }
  }
  return {min_r > 0.0 && min_r2 >= 0.95 && worst_dev <= 1e-6,
          "min r=" + num(min_r) + " min R^2=" + num(min_r2) + " max deviation/(1+|B|)=" + num(worst_dev),
          "r > 0, R^2 >= 0.95, <= 1e-6"};
}

Outcome g_ito_formula(const Scale& s, std::uint64_t seed0) {
  double worst_exact = 0.0;
  std::size_t inside = 0;
  for (std::size_t i = 0; i < s.n_seeds; ++i) {
    const auto b = gbm(s.n_steps, seed0 + i, 0.5, 1.5);
    const auto bm = stoch::ItoProcess::brownian(1);
    worst_exact = std::max({worst_exact,
                            stoch::ito_formula_residual(stoch::C2Function::affine(2.0, -1.0), bm, b).max_residual,
                            stoch::ito_formula_residual(stoch::C2Function::power(2), bm, b).max_residual});
    const double cube = stoch::ito_formula_residual(stoch::C2Function::power(3), bm, b).max_residual;
    // Calibrated: max residual * sqrt(N) / (1 + |B|^3) stays below 0.4 down to N = 2^10.
    const double envelope = (1.0 + std::pow(sup_abs(b), 3)) / std::sqrt(static_cast<double>(s.n_steps));
    inside += cube <= envelope;
  }
  return {worst_exact <= 1e-12 && inside >= share(0.95, s.n_seeds),
          "max linear/quadratic residual=" + num(worst_exact) + " cube inside envelope: " + count(inside, s.n_seeds),
          "<= 1e-12, >= 95%"};
}

std::vector<ExperimentConfig> reproducibility_configs(std::uint64_t seed) {
  std::vector<ExperimentConfig> out;
  auto make = [&](Verb v) {
    ExperimentConfig c;
    c.verb = v;
    c.seed = seed;
    c.n_steps = 1024;
    c.n_seeds = 2;
    c.n_max = 8;
    return c;
  };
  out.push_back(make(Verb::simulate));
  auto lift = make(Verb::lift);
  lift.lift = "strat";
  out.push_back(lift);
  auto integrate = make(Verb::integrate);
  integrate.n_steps = 256;
  integrate.controlled = "square";
  out.push_back(integrate);
  out.push_back(make(Verb::integrals));
  auto g = make(Verb::gexp);
  g.method = "both";
  g.n_paths = 2000;
  g.sigma_high = 1.5;
  out.push_back(g);
  out.push_back(make(Verb::roughness));
  out.push_back(make(Verb::norris));
  auto tails = make(Verb::tails);
  tails.n_seeds = 10;
  out.push_back(tails);
  return out;
}

Outcome reproducibility(const fs::path& scratch, std::uint64_t seed) {
  std::size_t identical = 0;
  std::string mismatch;
  const auto configs = reproducibility_configs(seed);
  for (auto c : configs) {
    const fs::path base = scratch / ("repro-" + std::string(to_string(c.verb)));
    c.output_dir = base / "a";
    const auto m1 = run(c);
    c.output_dir = base / "b";
    const auto m2 = run(c);
    bool same = m1.config_hash == m2.config_hash && m1.outputs.size() == m2.outputs.size() && !m1.outputs.empty();
    for (std::size_t k = 0; same && k < m1.outputs.size(); ++k)
      same = m1.outputs[k].file == m2.outputs[k].file && m1.outputs[k].sha256 == m2.outputs[k].sha256;
    if (same) ++identical;
    else mismatch += std::string(mismatch.empty() ? " differs:" : ",") + to_string(c.verb);
    std::error_code ec;
    fs::remove_all(base, ec);
  }
  return {identical == configs.size(), "byte-identical verbs: " + count(identical, configs.size()) + mismatch,
          "all"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome(const Scale&, const AcceptanceOptions&)> body;
};

std::vector<Criterion> criteria() {
  auto seeded = [](Outcome (*f)(const Scale&, std::uint64_t)) {
    return [f](const Scale& s, const AcceptanceOptions& o) { return f(s, o.seed); };
  };
  return {{1, "chen-exactness", seeded(chen_exactness)},
          {2, "quadratic-variation-identity", seeded(qv_identity)},
          {3, "ito-as-rough", seeded(ito_as_rough)},
          {4, "stratonovich-chain", seeded(stratonovich_chain)},
          {5, "g-expectation-anchors", seeded(gexp_anchors)},
          {6, "method-agreement", seeded(method_agreement)},
          {7, "kolmogorov-scaling", seeded(kolmogorov_scaling)},
          {8, "roughness-threshold", seeded(roughness_threshold)},
          {9, "tail-shape", seeded(tail_shape)},
          {10, "norris-scaling", seeded(norris_scaling)},
          {11, "g-ito-formula", seeded(g_ito_formula)},
          {12, "reproducibility",
           [](const Scale&, const AcceptanceOptions& o) { return reproducibility(o.scratch_dir, o.seed); }}};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  const Scale scale = scale_of(options.quick);
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!options.criteria.empty() &&
        std::find(options.criteria.begin(), options.criteria.end(), c.id) == options.criteria.end())
      continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body(scale, options);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what(), ""};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back({c.id, c.name, o.passed, o.measured, o.threshold, secs});
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%s %2d %-30s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str());
  char tail[32];
  std::snprintf(tail, sizeof tail, " (%.1f s)", r.seconds);
  return std::string(head) + " " + r.measured + " [" + r.threshold + "]" + tail;
}

nlohmann::json acceptance_json(const std::vector<CriterionResult>& results) {
  nlohmann::json rows = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"measured", r.measured},
                    {"threshold", r.threshold}});
    all = all && r.passed;
  }
  return {{"criteria", rows}, {"all_passed", all}};
}

}  // namespace grp::harness
