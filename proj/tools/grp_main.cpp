#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grp/core/errors.hpp"
#include "grp/harness/acceptance.hpp"
#include "grp/harness/config.hpp"
#include "grp/harness/run.hpp"

namespace {

using namespace grp::harness;

struct Overrides {
  std::optional<double> sigma_low, sigma_high, horizon, alpha, theta;
  std::optional<std::size_t> dim, n_steps, n_seeds, nx, n_paths, mc_steps;
  std::optional<int> control_levels;
  std::optional<unsigned> n_max, partition_levels;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> control_kind, lift, controlled, csv_y, csv_y_prime, input_path, phi, method, output_dir;
  std::optional<std::vector<double>> eps_grid;
  std::optional<std::vector<int>> criteria;
  bool quick = false;

  void apply(ExperimentConfig& c) const {
    auto set = [](auto& field, const auto& value) {
      if (value) field = *value;
    };
    set(c.sigma_low, sigma_low);
    set(c.sigma_high, sigma_high);
    set(c.horizon, horizon);
    set(c.alpha, alpha);
    set(c.theta, theta);
    set(c.dim, dim);
    set(c.n_steps, n_steps);
    set(c.n_seeds, n_seeds);
    set(c.nx, nx);
    set(c.n_paths, n_paths);
    set(c.mc_steps, mc_steps);
    set(c.control_levels, control_levels);
    set(c.n_max, n_max);
    set(c.partition_levels, partition_levels);
    set(c.seed, seed);
    set(c.control_kind, control_kind);
    set(c.lift, lift);
    set(c.controlled, controlled);
    set(c.csv_y, csv_y);
    set(c.csv_y_prime, csv_y_prime);
    set(c.input_path, input_path);
    set(c.phi, phi);
    set(c.method, method);
    set(c.eps_grid, eps_grid);
    set(c.criteria, criteria);
    if (output_dir) c.output_dir = *output_dir;
    if (quick) c.quick = true;
  }
};

int fail(int code, const std::string& kind, const std::string& message, const std::vector<std::string>& fields = {}) {
  std::cerr << error_record(code, kind, message, fields).dump() << '\n';
  return code;
}

void print_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  std::cout << in.rdbuf();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled G-Brownian motion and rough path experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  std::string config_file;
  Overrides o;
  app.add_option("--config", config_file, "JSON config file; flags override its keys")->check(CLI::ExistingFile);
  app.add_option("--output-dir", o.output_dir, "Output directory (default $GRP_OUTPUT_DIR or grp-output)");
  app.add_option("--sigma-low", o.sigma_low, "Lower volatility");
  app.add_option("--sigma-high", o.sigma_high, "Upper volatility");
  app.add_option("--dim", o.dim, "Path dimension");
  app.add_option("--control-levels", o.control_levels, "Volatility lattice size");
  app.add_option("--control-kind", o.control_kind, "constant | piecewise_constant | feedback_bang_bang");
  app.add_option("--t,--horizon", o.horizon, "Time horizon");
  app.add_option("--n-steps", o.n_steps, "Grid steps");
  app.add_option("--alpha", o.alpha, "Hoelder exponent");
  app.add_option("--theta", o.theta, "Roughness exponent");
  app.add_option("--n-max", o.n_max, "Deepest dyadic level");
  app.add_option("--seed", o.seed, "First seed");
  app.add_option("--seeds", o.n_seeds, "Number of seeds");
  app.add_option("--lift", o.lift, "ito | strat");
  app.add_option("--controlled", o.controlled, "identity | square | custom-csv");
  app.add_option("--csv-y", o.csv_y, "Y for custom-csv (path CSV, n*d columns)");
  app.add_option("--csv-y-prime", o.csv_y_prime, "Y' for custom-csv (path CSV, n*d*d columns)");
  app.add_option("--input", o.input_path, "Path CSV used instead of a simulated path");
  app.add_option("--partition-levels", o.partition_levels, "Dyadic partition levels");
  app.add_option("--phi", o.phi, "square | neg-square | abs | identity | x4");
  app.add_option("--method", o.method, "pde | mc | both");
  app.add_option("--nx", o.nx, "PDE grid points (odd)");
  app.add_option("--paths", o.n_paths, "Monte Carlo paths");
  app.add_option("--mc-steps", o.mc_steps, "Monte Carlo time steps");
  app.add_option("--eps", o.eps_grid, "Tail eps grid")->delimiter(',');
  app.add_option("--criteria", o.criteria, "Acceptance criteria to run (1-12)")->delimiter(',');
  app.add_flag("--quick", o.quick, "Reduced-scale acceptance run");

  const char* verbs[] = {"simulate", "lift",      "integrate", "integrals", "gexp",
                         "roughness", "norris", "tails",     "acceptance"};
  for (const char* v : verbs) app.add_subcommand(v)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(exit_usage, "usage", e.what());
  }

  ExperimentConfig config;
  config.output_dir = default_output_dir();
  try {
    if (!config_file.empty()) config = load_config(config_file, config);
    config.verb = verb_from_string(app.get_subcommands().front()->get_name());
    o.apply(config);
    validate(config);
  } catch (const ConfigError& e) {
    return fail(exit_usage, "invalid_config", e.what(), e.fields());
  } catch (const std::invalid_argument& e) {
    return fail(exit_usage, "invalid_config", e.what());
  }

  try {
    const auto manifest = run(config);
    if (config.verb == Verb::gexp) print_file(config.output_dir / "gexp.json");
    if (config.verb == Verb::acceptance) {
      std::ifstream in(config.output_dir / "acceptance.json");
      const auto table = nlohmann::json::parse(in);
      for (const auto& r : table["criteria"])
        std::printf("%s %2d %s %s\n", r["passed"].get<bool>() ? "PASS" : "FAIL", r["id"].get<int>(),
                    r["name"].get<std::string>().c_str(), r["measured"].get<std::string>().c_str());
    }
    std::cout << manifest.to_json().dump(2) << '\n';
    return manifest.exit_code;
  } catch (const ConfigError& e) {
    return fail(exit_usage, "invalid_config", e.what(), e.fields());
  } catch (const grp::NumericalError& e) {
    return fail(exit_numerical, "numerical", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(exit_usage, "module", e.what());
  } catch (const std::exception& e) {
    return fail(exit_numerical, "runtime", e.what());
  }
}
