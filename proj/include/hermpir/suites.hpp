#pragma once
//
// Property suites run by `hermpir verify`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hermpir::suites {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  bool all_passed() const;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  // Restrict the bases suite to one (q, m) pair; other suites use q only.
  std::optional<int> q;
  std::optional<int> m;
  int trials = 10000;  // chi-square samples
};

const std::vector<std::string>& suite_names();
// Throws InvalidArgument for an unknown suite.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts = {});

struct ChiSquare {
  double statistic = 0;
  double critical = 0;
  std::size_t df = 0;
  bool passed = false;
};
// Goodness of fit against the uniform distribution on counts.size() cells.
ChiSquare chi_square_uniform(const std::vector<std::uint64_t>& counts, double level = 0.999);

}  // namespace hermpir::suites
