#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace harmonic::verify {

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;

  int passed() const;
  int failed() const;
  std::string to_json() const;
};

bool is_suite(std::string_view name);
/// oracles, invariance, norms, becker or all.
SuiteResult run_suite(std::string_view name);

}  // namespace harmonic::verify
