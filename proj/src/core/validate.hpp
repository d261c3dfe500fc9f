#pragma once

#include <string>
#include <vector>

namespace dwell {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Fast built-in integrity suite: operator identities, conservation laws and
// the protocol identity, each at its round-off-class tolerance. Runs in a
// few seconds.
std::vector<CheckResult> run_validation_suite();

std::string format_validation_table(const std::vector<CheckResult>& results);

}  // namespace dwell
