#pragma once

// Named check suites comparing the main computational paths with the
// independent oracles. Used by `costrat verify` and the acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

namespace costrat {

struct Check {
  std::string name;
  bool pass = false;
  double measured = 0.0;   // worst deviation (or violation count, see detail)
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::vector<Check> checks;

  bool pass() const;
};

/// symbols, recoupling, multiplication, fuchs, wilson, spectrum, costratum.
const std::vector<std::string>& suite_names();

/// Runs one suite; throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, std::uint64_t seed);

/// Deterministic JSON report (no timings).
std::string report_json(const std::vector<SuiteResult>& suites, std::uint64_t seed);

}  // namespace costrat
