#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dedekind/engines.hpp"

namespace dedekind {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // actual vs expected on failure, timing notes otherwise
};

struct VerifyOptions {
  std::filesystem::path cache_dir;  // empty disables cache persistence
  unsigned threads = 0;             // 0 picks hardware concurrency
  std::uint64_t tuple_budget = kDefaultTupleBudget;
  bool with_optional = false;       // include the sanctioned long runs
  Executor::Progress progress;      // diagnostic sink for long phases
};

// Named verification suites:
//   quick  - tabulated values through n = 5, kernels, reduced sums at base 4
//   paper  - quick plus the n = 6 lattice and the heavy verbatim sums
//   oracle - definitional brute-force cross-checks at n <= 3
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const VerifyOptions& opts);

struct CriterionResult {
  int number = 0;
  std::string title;
  bool pass = false;
  std::string detail;
};

// The release gate: one result per acceptance criterion.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts);

}  // namespace dedekind
