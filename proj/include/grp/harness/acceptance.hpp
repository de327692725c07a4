#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace grp::harness {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  /// Worst observed quantity, formatted.
  std::string measured;
  std::string threshold;
  double seconds;
};

struct AcceptanceOptions {
  /// Fewer seeds and smaller grids; thresholds unchanged.
  bool quick = false;
  /// 1-based criteria to run; empty runs all twelve.
  std::vector<int> criteria;
  std::uint64_t seed = 1;
  /// Parent of the temporary run directories used by the reproducibility criterion.
  std::filesystem::path scratch_dir = std::filesystem::temp_directory_path();
};

/// Runs the criteria in order. Stops nothing on failure.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS  1 chen-exactness  measured=... threshold=... (1.2 s)"
std::string format_result(const CriterionResult& r);

/// Results without timings.
nlohmann::json acceptance_json(const std::vector<CriterionResult>& results);

}  // namespace grp::harness
