#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sawlab/counting.hpp"

namespace sawlab {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Suites: counting, two_part, patterns, resampler, snake, or all.
/// Throws std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_verify_suite(const std::string& suite, std::size_t nmax,
                                          const EngineOptions& options = {});

}  // namespace sawlab
