#include "grp/harness/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "grp/core/chen.hpp"
#include "grp/core/errors.hpp"
#include "grp/core/norms.hpp"
#include "grp/gexp/monte_carlo.hpp"
#include "grp/gexp/pde.hpp"
#include "grp/harness/acceptance.hpp"
#include "grp/harness/csv.hpp"
#include "grp/harness/hash.hpp"
#include "grp/integral/integral.hpp"
#include "grp/roughness/norris.hpp"
#include "grp/roughness/roughness.hpp"
#include "grp/stoch/integrals.hpp"

#ifndef GRP_VERSION
#define GRP_VERSION "0.0.0"
#endif

namespace grp::harness {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

/// Collects outputs written under one directory.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  const fs::path& dir() const noexcept { return dir_; }

  void csv(const std::string& name, const Table& t) {
    write_csv(t, dir_ / name);
    names_.push_back(name);
  }
  void path_csv(const std::string& name, const GridPath& p) {
    write_path_csv(p, dir_ / name);
    names_.push_back(name);
  }
  void level2_csv(const std::string& name, const RoughPath& rp) {
    write_level2_csv(rp, dir_ / name);
    names_.push_back(name);
  }
  void json_file(const std::string& name, const json& j) {
    write_json(j, dir_ / name);
    names_.push_back(name);
  }

  std::vector<OutputRecord> records() const {
    std::vector<OutputRecord> out;
    for (const auto& n : names_) out.push_back({n, sha256_file(dir_ / n), fs::file_size(dir_ / n)});
    return out;
  }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

std::string tag(std::uint64_t seed) { return "s" + std::to_string(seed); }

std::vector<std::uint64_t> seeds_of(const ExperimentConfig& c) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < c.n_seeds; ++i) out.push_back(c.seed + i);
  return out;
}

json band_json(const ExperimentConfig& c) {
  return {{"sigma_low", c.sigma_low}, {"sigma_high", c.sigma_high}, {"dim", c.dim}};
}

/// Path for one seed: the input CSV when configured, else a simulation.
GridPath base_path(const ExperimentConfig& c, std::uint64_t seed) {
  if (!c.input_path.empty()) return load_path_csv(c.input_path);
  return simulate_path(c, seed).b;
}

std::shared_ptr<const RoughPath> lift_of(const ExperimentConfig& c, const GridPath& b) {
  auto ito = sim::ito_lift(b);
  if (c.lift == "ito") return std::make_shared<RoughPath>(std::move(ito));
  return std::make_shared<RoughPath>(sim::stratonovich_lift(ito, sim::quadratic_variation(b)));
}

Table control_table(const sim::ControlPath& control) {
  Table t{{"t"}, {}};
  const std::size_t dd = control.dim() * control.dim();
  for (std::size_t e = 0; e < dd; ++e) t.header.push_back("a" + std::to_string(e + 1));
  for (std::size_t k = 0; k < control.grid().n_steps(); ++k) {
    std::vector<double> row{control.grid().time(k)};
    const auto a = control.at(k);
    row.insert(row.end(), a.begin(), a.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

void run_simulate(const ExperimentConfig& c, OutputSet& out) {
  json summary = json::array();
  for (auto seed : seeds_of(c)) {
    const auto s = simulate_path(c, seed);
    out.path_csv("path_" + tag(seed) + ".csv", s.b);
    out.csv("control_" + tag(seed) + ".csv", control_table(s.control));
    const auto qv = sim::quadratic_variation(s.b);
    const auto qt = qv.at(s.b.grid().n_steps());
    double trace = 0.0;
    for (std::size_t i = 0; i < s.b.dim(); ++i) trace += qt[i * s.b.dim() + i];
    const auto last = s.b.at(s.b.grid().n_steps());
    summary.push_back({{"seed", seed},
                       {"sup_norm", s.b.sup_norm()},
                       {"terminal", std::vector<double>(last.begin(), last.end())},
                       {"qv_trace_terminal", trace}});
  }
  out.json_file("summary.json", {{"band", band_json(c)}, {"control_kind", c.control_kind}, {"paths", summary}});
}

void run_lift(const ExperimentConfig& c, OutputSet& out) {
  json summary = json::array();
  for (auto seed : seeds_of(c)) {
    const auto b = base_path(c, seed);
    const auto rp = lift_of(c, b);
    out.path_csv("path_" + tag(seed) + ".csv", b);
    out.level2_csv("level2_" + tag(seed) + ".csv", *rp);
    summary.push_back({{"seed", seed},
                       {"lift", c.lift},
                       {"chen_defect", chen_defect(*rp)},
                       {"hoelder_norm", hoelder_norm(b, c.alpha)},
                       {"two_alpha_norm", two_alpha_norm(*rp, c.alpha)},
                       {"rough_path_seminorm", rough_path_seminorm(*rp, c.alpha)}});
    if (!c.input_path.empty()) break;
  }
  out.json_file("summary.json", {{"alpha", c.alpha}, {"paths", summary}});
}

ControlledPath controlled_of(const ExperimentConfig& c, const std::shared_ptr<const RoughPath>& rp) {
  if (c.controlled == "identity") return integral::controlled_lift_smooth(integral::SmoothMap::identity(rp->dim()), rp);
  if (c.controlled == "square") {
    if (rp->dim() != 1) throw std::invalid_argument("controlled 'square' needs dimension 1");
    return integral::controlled_lift_smooth(integral::SmoothMap::square(), rp);
  }
  auto y = load_path_csv(c.csv_y);
  auto yp = load_path_csv(c.csv_y_prime);
  const std::size_t d = rp->dim();
  if (y.grid().n_steps() != rp->grid().n_steps() || yp.grid().n_steps() != rp->grid().n_steps())
    throw std::invalid_argument("custom-csv: grid mismatch with the path");
  if (y.dim() % d != 0 || yp.dim() != y.dim() * d)
    throw std::invalid_argument("custom-csv: Y needs n*d columns and Y' n*d*d columns");
  return ControlledPath(GridPath(rp->grid(), y.dim(), {y.data().begin(), y.data().end()}),
                        GridPath(rp->grid(), yp.dim(), {yp.data().begin(), yp.data().end()}), rp, y.dim() / d);
}

void run_integrate(const ExperimentConfig& c, OutputSet& out) {
  json summary = json::array();
  for (auto seed : seeds_of(c)) {
    const auto b = base_path(c, seed);
    const auto rp = lift_of(c, b);
    const auto cp = controlled_of(c, rp);
    Table t{{"level", "mesh"}, {}};
    for (std::size_t a = 0; a < cp.out_dim(); ++a) t.header.push_back("value" + std::to_string(a + 1));
    t.header.push_back("max_local_error");
    json levels = json::array();
    for (unsigned lvl = 0; lvl <= c.partition_levels; ++lvl) {
      const auto part = integral::Partition::dyadic(b.grid(), lvl);
      const auto r = integral::gubinelli_integral(cp, part);
      std::vector<double> row{static_cast<double>(lvl), part.mesh()};
      row.insert(row.end(), r.value.begin(), r.value.end());
      row.push_back(r.max_local_error);
      t.rows.push_back(std::move(row));
    }
    const auto base = integral::gubinelli_integral(cp, integral::Partition::base(b.grid()));
    const auto local = integral::local_error_check(cp, *rp, c.alpha);
    out.csv("integrate_" + tag(seed) + ".csv", t);
    summary.push_back({{"seed", seed},
                       {"base_value", std::vector<double>(base.value.begin(), base.value.end())},
                       {"k_hat", local.k_hat},
                       {"local_error_denominator", local.denominator}});
    if (!c.input_path.empty()) break;
  }
  out.json_file("summary.json",
                {{"lift", c.lift}, {"controlled", c.controlled}, {"alpha", c.alpha}, {"paths", summary}});
}

void run_integrals(const ExperimentConfig& c, OutputSet& out) {
  json summary = json::array();
  for (auto seed : seeds_of(c)) {
    const auto b = base_path(c, seed);
    const auto ito = stoch::ito_integral(b, b);
    const auto strat = stoch::stratonovich_integral(b, b);
    const auto qv = sim::quadratic_variation(b);
    const std::size_t d = b.dim();
    Table t{{"t", "ito", "strat", "qv_trace"}, {}};
    for (std::size_t k = 0; k < b.n_points(); ++k) {
      double tr = 0.0;
      for (std::size_t i = 0; i < d; ++i) tr += qv.at(k)[i * d + i];
      t.rows.push_back({b.grid().time(k), ito(k, 0), strat(k, 0), tr});
    }
    out.csv("integrals_" + tag(seed) + ".csv", t);

    std::vector<integral::Partition> parts;
    for (unsigned lvl = 1; lvl <= c.partition_levels; ++lvl) parts.push_back(integral::Partition::dyadic(b.grid(), lvl));
    const auto mid = stoch::midpoint_convergence(b, b, parts);
    const std::size_t n = b.grid().n_steps();
    json entry{{"seed", seed},
               {"ito_terminal", ito(n, 0)},
               {"strat_terminal", strat(n, 0)},
               {"qv_trace_terminal", t.rows.back()[3]},
               {"midpoint_meshes", mid.meshes},
               {"midpoint_gaps", mid.gaps}};
    if (mid.fitted_order) entry["midpoint_fitted_order"] = *mid.fitted_order;
    summary.push_back(entry);
    if (!c.input_path.empty()) break;
  }
  out.json_file("summary.json", {{"integrand", "B"}, {"paths", summary}});
}

json estimate_json(const gexp::ExpectationEstimate& e) {
  json diag = json::object();
  for (const auto& [k, v] : e.diagnostics.values) diag[k] = v;
  return {{"value", e.value},
          {"ci_halfwidth", e.ci_halfwidth},
          {"method", gexp::to_string(e.method)},
          {"diagnostics", diag},
          {"warnings", e.diagnostics.warnings},
          {"note", e.diagnostics.note}};
}

void run_gexp(const ExperimentConfig& c, OutputSet& out) {
  const auto band = band_of(c);
  const auto phi = gexp::named_payoff(c.phi);
  json result{{"phi", c.phi}, {"band", band_json(c)}, {"t", c.horizon}};
  if (c.method == "pde" || c.method == "both") {
    gexp::GHeatProblem p;
    p.phi = phi;
    p.band = band;
    p.t_final = c.horizon;
    p.nx = c.nx;
    const auto sol = gexp::solve_g_heat(p);
    Table t{{"x", "u"}, {}};
    for (std::size_t i = 0; i < sol.x.size(); ++i) t.rows.push_back({sol.x[i], sol.u[i]});
    out.csv("pde_solution.csv", t);
    result["pde"] = estimate_json(gexp::pde_upper_expectation(p));
    result["pde_lower"] = estimate_json(gexp::pde_lower_expectation(p));
    result["value"] = result["pde"]["value"];
  }
  if (c.method == "mc" || c.method == "both") {
    const gexp::McParams mp{c.n_paths, c.mc_steps, c.horizon, c.seed};
    const auto family = gexp::bang_bang_family(band, gexp::payoff_convexity(phi));
    result["mc"] = estimate_json(gexp::mc_upper_expectation(phi, band, family, mp));
    if (!result.contains("value")) result["value"] = result["mc"]["value"];
  }
  out.json_file("gexp.json", result);
}

void run_roughness(const ExperimentConfig& c, OutputSet& out) {
  Table rows{{"seed", "d_theta", "l_theta_lower", "direct_estimate", "decay_slope"}, {}};
  Table levels{{"seed", "level", "minimum"}, {}};
  std::size_t positive = 0, decaying = 0;
  for (auto seed : seeds_of(c)) {
    const auto b = base_path(c, seed);
    const auto r = roughness::dyadic_roughness(b, c.theta, c.n_max);
    rows.rows.push_back({static_cast<double>(seed), r.d_theta, r.l_theta_lower, r.direct_estimate.value_or(NAN),
                         r.decay_slope});
    for (std::size_t n = 0; n < r.level_minima.size(); ++n)
      levels.rows.push_back({static_cast<double>(seed), static_cast<double>(n + 1), r.level_minima[n]});
    positive += r.l_theta_lower > 0.0;
    decaying += r.decay_slope < 0.0;
    if (!c.input_path.empty()) break;
  }
  out.csv("roughness.csv", rows);
  out.csv("level_minima.csv", levels);
  out.json_file("summary.json", {{"theta", c.theta},
                                 {"n_max", c.n_max},
                                 {"paths", rows.rows.size()},
                                 {"positive_l", positive},
                                 {"decaying", decaying}});
}

GridPath constant_path(const TimeGrid& grid, double v) { return GridPath::constant(grid, std::vector<double>{v}); }

void run_norris(const ExperimentConfig& c, OutputSet& out) {
  if (c.dim != 1) throw std::invalid_argument("norris supports dimension 1");
  const roughness::NorrisParams params{c.theta, c.alpha, c.n_max};
  Table rows{{"seed", "lambda", "sup_norm_i", "sup_norm_y", "sup_norm_z", "r_quantity", "l_theta_lower"}, {}};
  json summary = json::array();
  for (auto seed : seeds_of(c)) {
    const auto b = base_path(c, seed);
    const std::shared_ptr<const RoughPath> rp = std::make_shared<RoughPath>(sim::ito_lift(b));
    const auto ident = integral::controlled_lift_smooth(integral::SmoothMap::identity(1), rp);
    std::vector<roughness::NorrisReport> family;
    for (double lambda : {1.0, 1e-1, 1e-2, 1e-3, 1e-4}) {
      family.push_back(
          roughness::norris_diagnostic(ident.scaled(lambda), constant_path(b.grid(), lambda), *rp, params));
      const auto& f = family.back();
      rows.rows.push_back({static_cast<double>(seed), lambda, f.sup_norm_i, f.sup_norm_y, f.sup_norm_z, f.r_quantity,
                           f.l_theta_lower});
    }
    const auto fit = roughness::fit_norris_constants(family);
    const auto y1 = integral::controlled_lift_smooth(
        integral::SmoothMap::scalar([](double x) { return std::sin(x); }, [](double x) { return std::cos(x); }), rp);
    const auto z1 = constant_path(b.grid(), 0.3);
    const auto y2 = y1.combine(1.0, ident.scaled(1e-6), 1.0);
    const auto z2 = z1.combine(1.0, constant_path(b.grid(), 1e-6), 1.0);
    const auto u = roughness::uniqueness_check(y1, z1, y2, z2, *rp, params, fit, 1e-5);
    summary.push_back({{"seed", seed},
                       {"fit",
                        {{"log_m", fit.log_m},
                         {"q", fit.q},
                         {"r", fit.r},
                         {"r_squared", fit.r_squared},
                         {"full_rank", fit.full_rank},
                         {"r_simple", fit.r_simple},
                         {"r_squared_simple", fit.r_squared_simple}}},
                       {"uniqueness",
                        {{"i_gap", u.i_gap},
                         {"deviation", u.deviation},
                         {"tolerance", u.tolerance},
                         {"verdict", roughness::to_string(u.verdict)}}}});
    if (!c.input_path.empty()) break;
  }
  out.csv("norris.csv", rows);
  out.json_file("summary.json", {{"theta", c.theta}, {"alpha", c.alpha}, {"paths", summary}});
}

std::vector<double> default_eps_grid() {
  std::vector<double> eps;
  for (int i = 0; i <= 14; ++i) eps.push_back(0.06 + 0.005 * i);
  return eps;
}

void run_tails(const ExperimentConfig& c, OutputSet& out) {
  const std::vector<sim::VolatilityBand> bands{band_of(c)};
  const auto eps = c.eps_grid.empty() ? default_eps_grid() : c.eps_grid;
  roughness::TailParams p;
  p.theta = c.theta;
  p.n_max = c.n_max;
  p.n_steps = c.n_steps;
  p.horizon = c.horizon;
  p.n_seeds = c.n_seeds;
  p.seed = c.seed;
  const auto r = roughness::roughness_tail_experiment(bands, eps, p);
  Table t{{"eps", "eps_pow_minus2", "frequency"}, {}};
  for (const auto& l : r.law_labels) t.header.push_back("freq_" + l);
  for (const auto& row : r.rows) {
    std::vector<double> v{row.eps, 1.0 / (row.eps * row.eps), row.frequency};
    v.insert(v.end(), row.per_law.begin(), row.per_law.end());
    t.rows.push_back(std::move(v));
  }
  out.csv("tails.csv", t);
  json s{{"theta", c.theta}, {"laws", r.law_labels}, {"min_l", r.min_l}, {"max_l", r.max_l},
         {"fitted_points", r.fitted_points}};
  s["slope"] = r.slope ? json(*r.slope) : json(nullptr);
  s["r_squared"] = r.r_squared ? json(*r.r_squared) : json(nullptr);
  out.json_file("summary.json", s);
}

int run_acceptance_verb(const ExperimentConfig& c, OutputSet& out) {
  AcceptanceOptions opt;
  opt.quick = c.quick;
  opt.criteria = c.criteria;
  opt.seed = c.seed;
  opt.scratch_dir = out.dir() / "scratch";
  const auto results = run_acceptance(opt);
  std::error_code ec;
  fs::remove_all(opt.scratch_dir, ec);
  out.json_file("acceptance.json", acceptance_json(results));
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  return all ? exit_ok : exit_acceptance;
}

}  // namespace

const char* library_version() noexcept { return GRP_VERSION; }

fs::path default_output_dir() {
  const char* env = std::getenv("GRP_OUTPUT_DIR");
  return env && *env ? fs::path(env) : fs::path("grp-output");
}

void write_json(const json& j, const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << j.dump(2) << '\n';
}

sim::SamplePath simulate_path(const ExperimentConfig& c, std::uint64_t seed) {
  const auto band = band_of(c);
  const TimeGrid grid(c.horizon, c.n_steps);
  const auto kind = sim::control_kind_from_string(c.control_kind);
  sim::ConvexityIndicator indicator;
  if (kind == sim::ControlKind::feedback_bang_bang)
    indicator = gexp::payoff_convexity(gexp::named_payoff(c.phi));
  return sim::sample_gbm_path(sim::sample_control(band, kind, grid, seed, indicator), seed);
}

json RunManifest::to_json() const {
  json outs = json::array();
  for (const auto& o : outputs) outs.push_back({{"file", o.file}, {"sha256", o.sha256}, {"bytes", o.bytes}});
  return {{"verb", verb},
          {"config_hash", config_hash},
          {"library_version", library_version},
          {"wall_time_seconds", wall_time_seconds},
          {"outputs", outs},
          {"exit_code", exit_code}};
}

json error_record(int exit_code, const std::string& kind, const std::string& message,
                  const std::vector<std::string>& fields) {
  json j{{"error", kind}, {"message", message}, {"exit_code", exit_code}};
  if (!fields.empty()) j["fields"] = fields;
  return j;
}

RunManifest run(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  OutputSet out(config.output_dir);
  const std::string hash = config_hash(config);
  out.json_file("config.json", {{"config", to_json(config)}, {"config_hash", hash}});

  RunManifest m;
  m.verb = to_string(config.verb);
  m.config_hash = hash;
  m.library_version = library_version();
  try {
    switch (config.verb) {
      case Verb::simulate: run_simulate(config, out); break;
      case Verb::lift: run_lift(config, out); break;
      case Verb::integrate: run_integrate(config, out); break;
      case Verb::integrals: run_integrals(config, out); break;
      case Verb::gexp: run_gexp(config, out); break;
      case Verb::roughness: run_roughness(config, out); break;
      case Verb::norris: run_norris(config, out); break;
      case Verb::tails: run_tails(config, out); break;
      case Verb::acceptance: m.exit_code = run_acceptance_verb(config, out); break;
    }
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(to_string(config.verb)) + ": " + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(to_string(config.verb)) + ": " + e.what());
  }
  m.outputs = out.records();
  m.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_json(m.to_json(), config.output_dir / "manifest.json");
  return m;
}

}  // namespace grp::harness
