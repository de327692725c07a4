#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grp/sim/volatility.hpp"

namespace grp::harness {

enum class Verb { simulate, lift, integrate, integrals, gexp, roughness, norris, tails, acceptance };

const char* to_string(Verb v) noexcept;
/// Throws std::invalid_argument for unknown names.
Verb verb_from_string(const std::string& name);

struct ExperimentConfig {
  Verb verb = Verb::simulate;

  double sigma_low = 0.5;
  double sigma_high = 1.0;
  std::size_t dim = 1;
  int control_levels = 2;
  std::string control_kind = "piecewise_constant";

  double horizon = 1.0;
  std::size_t n_steps = 4096;

  double alpha = 0.4;
  double theta = 0.55;
  unsigned n_max = 10;

  std::uint64_t seed = 1;
  std::size_t n_seeds = 1;

  /// lift, integrate: "ito" or "strat".
  std::string lift = "ito";
  /// integrate: "identity", "square" or "custom-csv" (Y and Y' read from csv_y / csv_y_prime).
  std::string controlled = "identity";
  std::string csv_y;
  std::string csv_y_prime;
  /// lift, integrate, integrals: optional path CSV replacing the simulated path.
  std::string input_path;
  /// integrate, integrals: dyadic partition levels 1..partition_levels.
  unsigned partition_levels = 8;

  /// gexp.
  std::string phi = "square";
  std::string method = "pde";
  std::size_t nx = 801;
  std::size_t n_paths = 10000;
  std::size_t mc_steps = 64;

  /// tails.
  std::vector<double> eps_grid;

  /// acceptance: run criteria at reduced scale when set.
  bool quick = false;
  /// acceptance: subset of criteria (1-based); empty runs all.
  std::vector<int> criteria;

  /// Excluded from the config hash.
  std::filesystem::path output_dir = "grp-output";
};

sim::VolatilityBand band_of(const ExperimentConfig& c);

/// Field-level problems; empty when the config can be dispatched.
std::vector<std::string> validation_errors(const ExperimentConfig& c);

/// Throws ConfigError carrying every message from validation_errors.
void validate(const ExperimentConfig& c);

class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> fields);
  const std::vector<std::string>& fields() const noexcept { return fields_; }

 private:
  std::vector<std::string> fields_;
};

/// Every field except output_dir, with sorted keys.
nlohmann::json to_json(const ExperimentConfig& c);

/// Overlays the keys of j onto base. Unknown keys and wrong types raise ConfigError.
ExperimentConfig apply_json(ExperimentConfig base, const nlohmann::json& j);

ExperimentConfig load_config(const std::filesystem::path& file, ExperimentConfig base = {});

/// Hex SHA-256 of to_json(c).dump().
std::string config_hash(const ExperimentConfig& c);

}  // namespace grp::harness
