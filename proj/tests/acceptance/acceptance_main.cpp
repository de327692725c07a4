#include <cstdio>
#include <cstdlib>
#include <string>

#include "grp/harness/acceptance.hpp"

// Usage: acceptance [--quick] [criterion ...]
int main(int argc, char** argv) {
  grp::harness::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--quick") options.quick = true;
    else options.criteria.push_back(std::atoi(arg.c_str()));
  }
  std::size_t failed = 0;
  for (const auto& r : grp::harness::run_acceptance(options)) {
    std::printf("%s\n", grp::harness::format_result(r).c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%s\n", failed == 0 ? "ALL CRITERIA PASSED" : (std::to_string(failed) + " CRITERIA FAILED").c_str());
  return failed == 0 ? 0 : 1;
}
