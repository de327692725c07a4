#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "grp/harness/config.hpp"
#include "grp/sim/gbm.hpp"

namespace grp::harness {

/// Exit codes of the grp binary.
enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_numerical = 2, exit_acceptance = 3 };

const char* library_version() noexcept;

/// $GRP_OUTPUT_DIR when set and non-empty, else "grp-output".
std::filesystem::path default_output_dir();

struct OutputRecord {
  /// Relative to the output directory.
  std::string file;
  std::string sha256;
  std::uintmax_t bytes;
};

struct RunManifest {
  std::string verb;
  std::string config_hash;
  std::string library_version;
  double wall_time_seconds = 0.0;
  std::vector<OutputRecord> outputs;
  int exit_code = exit_ok;

  nlohmann::json to_json() const;
};

/// Validates the config, dispatches the verb, writes every output plus
/// manifest.json (not listed in outputs) into config.output_dir.
/// ConfigError for invalid configs; module errors propagate with the verb as context.
RunManifest run(const ExperimentConfig& config);

/// Error record printed on stderr by the CLI.
nlohmann::json error_record(int exit_code, const std::string& kind, const std::string& message,
                            const std::vector<std::string>& fields = {});

/// The controlled G-BM sample used by every path-based verb for one seed.
sim::SamplePath simulate_path(const ExperimentConfig& config, std::uint64_t seed);

void write_json(const nlohmann::json& j, const std::filesystem::path& file);

}  // namespace grp::harness
