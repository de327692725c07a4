#include "grp/harness/config.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <utility>

#include "grp/gexp/expectation.hpp"
#include "grp/harness/hash.hpp"

namespace grp::harness {

namespace {

constexpr std::array<std::pair<Verb, const char*>, 9> kVerbs{{{Verb::simulate, "simulate"},
                                                              {Verb::lift, "lift"},
                                                              {Verb::integrate, "integrate"},
                                                              {Verb::integrals, "integrals"},
                                                              {Verb::gexp, "gexp"},
                                                              {Verb::roughness, "roughness"},
                                                              {Verb::norris, "norris"},
                                                              {Verb::tails, "tails"},
                                                              {Verb::acceptance, "acceptance"}}};

std::string join_messages(const std::vector<std::string>& fields) {
  std::string out = "invalid configuration";
  for (const auto& f : fields) out += "; " + f;
  return out;
}

bool divides_dyadically(std::size_t n_steps, unsigned levels) {
  return levels < 63 && n_steps % (std::size_t{1} << levels) == 0;
}

}  // namespace

const char* to_string(Verb v) noexcept {
  for (const auto& [verb, name] : kVerbs)
    if (verb == v) return name;
  return "unknown";
}

Verb verb_from_string(const std::string& name) {
  for (const auto& [verb, label] : kVerbs)
    if (name == label) return verb;
  throw std::invalid_argument("unknown verb '" + name + "'");
}

ConfigError::ConfigError(std::vector<std::string> fields)
    : std::invalid_argument(join_messages(fields)), fields_(std::move(fields)) {}

sim::VolatilityBand band_of(const ExperimentConfig& c) {
  if (c.dim == 1) return sim::VolatilityBand::scalar(c.sigma_low, c.sigma_high, static_cast<std::size_t>(c.control_levels));
  return sim::VolatilityBand::isotropic(c.sigma_low, c.sigma_high, c.dim, static_cast<std::size_t>(c.control_levels));
}

std::vector<std::string> validation_errors(const ExperimentConfig& c) {
  std::vector<std::string> errs;
  auto fail = [&](const std::string& field, const std::string& msg) { errs.push_back(field + ": " + msg); };

  if (c.dim == 0) fail("dim", "must be at least 1");
  if (c.control_levels < 1) fail("control_levels", "must be at least 1");
  if (c.dim > 0 && c.control_levels >= 1) {
    try {
      band_of(c).validate();
    } catch (const std::exception& e) {
      fail("sigma_low/sigma_high", e.what());
    }
  }
  try {
    sim::control_kind_from_string(c.control_kind);
  } catch (const std::exception& e) {
    fail("control_kind", e.what());
  }
  if (!(c.horizon > 0.0) || !std::isfinite(c.horizon)) fail("horizon", "must be positive and finite");
  if (c.n_steps < 2) fail("n_steps", "must be at least 2");
  if (c.n_seeds == 0) fail("n_seeds", "must be at least 1");

  const bool rough = c.verb == Verb::integrate || c.verb == Verb::norris;
  if (rough && !(c.alpha > 1.0 / 3.0 && c.alpha <= 0.5)) fail("alpha", "must lie in (1/3, 1/2]");
  if (!(c.theta > 0.0 && c.theta <= 1.0)) fail("theta", "must lie in (0, 1]");
  if (c.verb == Verb::norris && !(c.theta < 2.0 * c.alpha)) fail("theta", "must be below 2 alpha");

  const bool dyadic = c.verb == Verb::roughness || c.verb == Verb::norris || c.verb == Verb::tails;
  if (dyadic && (c.n_max == 0 || !divides_dyadically(c.n_steps, c.n_max)))
    fail("n_max", "2^n_max must divide n_steps");

  if (c.lift != "ito" && c.lift != "strat") fail("lift", "must be 'ito' or 'strat'");
  if (c.controlled != "identity" && c.controlled != "square" && c.controlled != "custom-csv")
    fail("controlled", "must be 'identity', 'square' or 'custom-csv'");
  if (c.verb == Verb::integrate && c.controlled == "custom-csv" && (c.csv_y.empty() || c.csv_y_prime.empty()))
    fail("csv_y", "custom-csv needs both csv_y and csv_y_prime");
  if ((c.verb == Verb::integrate || c.verb == Verb::integrals) &&
      (c.partition_levels == 0 || !divides_dyadically(c.n_steps, c.partition_levels)))
    fail("partition_levels", "2^partition_levels must divide n_steps");

  try {
    gexp::named_payoff(c.phi);
  } catch (const std::exception& e) {
    fail("phi", e.what());
  }
  if (c.method != "pde" && c.method != "mc" && c.method != "both") fail("method", "must be 'pde', 'mc' or 'both'");
  if (c.nx < 3 || c.nx % 2 == 0) fail("nx", "must be odd and at least 3");
  if (c.verb == Verb::gexp && c.method != "pde" && c.n_paths < 100) fail("n_paths", "must be at least 100");
  if (c.mc_steps == 0) fail("mc_steps", "must be at least 1");
  if (c.verb == Verb::gexp && c.dim != 1) fail("dim", "gexp supports dimension 1");

  const double eps_max = 0.5 / std::pow(c.horizon, c.theta);
  for (double e : c.eps_grid)
    if (!(e > 0.0 && e < eps_max)) {
      fail("eps_grid", "entries must lie in (0, 1/(2 T^theta))");
      break;
    }
  for (int k : c.criteria)
    if (k < 1 || k > 12) {
      fail("criteria", "entries must lie in 1..12");
      break;
    }
  return errs;
}

void validate(const ExperimentConfig& c) {
  auto errs = validation_errors(c);
  if (!errs.empty()) throw ConfigError(std::move(errs));
}

nlohmann::json to_json(const ExperimentConfig& c) {
  return nlohmann::json{{"verb", to_string(c.verb)},
                        {"sigma_low", c.sigma_low},
                        {"sigma_high", c.sigma_high},
                        {"dim", c.dim},
                        {"control_levels", c.control_levels},
                        {"control_kind", c.control_kind},
                        {"horizon", c.horizon},
                        {"n_steps", c.n_steps},
                        {"alpha", c.alpha},
                        {"theta", c.theta},
                        {"n_max", c.n_max},
                        {"seed", c.seed},
                        {"n_seeds", c.n_seeds},
                        {"lift", c.lift},
                        {"controlled", c.controlled},
                        {"csv_y", c.csv_y},
                        {"csv_y_prime", c.csv_y_prime},
                        {"input_path", c.input_path},
                        {"partition_levels", c.partition_levels},
                        {"phi", c.phi},
                        {"method", c.method},
                        {"nx", c.nx},
                        {"n_paths", c.n_paths},
                        {"mc_steps", c.mc_steps},
                        {"eps_grid", c.eps_grid},
                        {"quick", c.quick},
                        {"criteria", c.criteria}};
}

ExperimentConfig apply_json(ExperimentConfig c, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError({"config: top level must be an object"});
  std::vector<std::string> errs;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "verb") c.verb = verb_from_string(value.get<std::string>());
      else if (key == "sigma_low") c.sigma_low = value.get<double>();
      else if (key == "sigma_high") c.sigma_high = value.get<double>();
      else if (key == "dim") c.dim = value.get<std::size_t>();
      else if (key == "control_levels") c.control_levels = value.get<int>();
      else if (key == "control_kind") c.control_kind = value.get<std::string>();
      else if (key == "horizon") c.horizon = value.get<double>();
      else if (key == "n_steps") c.n_steps = value.get<std::size_t>();
      else if (key == "alpha") c.alpha = value.get<double>();
      else if (key == "theta") c.theta = value.get<double>();
      else if (key == "n_max") c.n_max = value.get<unsigned>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "n_seeds") c.n_seeds = value.get<std::size_t>();
      else if (key == "lift") c.lift = value.get<std::string>();
      else if (key == "controlled") c.controlled = value.get<std::string>();
      else if (key == "csv_y") c.csv_y = value.get<std::string>();
      else if (key == "csv_y_prime") c.csv_y_prime = value.get<std::string>();
      else if (key == "input_path") c.input_path = value.get<std::string>();
      else if (key == "partition_levels") c.partition_levels = value.get<unsigned>();
      else if (key == "phi") c.phi = value.get<std::string>();
      else if (key == "method") c.method = value.get<std::string>();
      else if (key == "nx") c.nx = value.get<std::size_t>();
      else if (key == "n_paths") c.n_paths = value.get<std::size_t>();
      else if (key == "mc_steps") c.mc_steps = value.get<std::size_t>();
      else if (key == "eps_grid") c.eps_grid = value.get<std::vector<double>>();
      else if (key == "quick") c.quick = value.get<bool>();
      else if (key == "criteria") c.criteria = value.get<std::vector<int>>();
      else if (key == "output_dir") c.output_dir = value.get<std::string>();
      else errs.push_back(key + ": unknown field");
    } catch (const nlohmann::json::exception&) {
      errs.push_back(key + ": wrong type (" + value.type_name() + ")");
    } catch (const std::invalid_argument& e) {
      errs.push_back(key + ": " + e.what());
    }
  }
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file, ExperimentConfig base) {
  std::ifstream in(file);
  if (!in) throw ConfigError({"config: cannot read " + file.string()});
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({std::string("config: ") + e.what()});
  }
  return apply_json(std::move(base), j);
}

std::string config_hash(const ExperimentConfig& c) { return sha256_hex(to_json(c).dump()); }

}  // namespace grp::harness
