#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cohres {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// The seven in-process acceptance suites (the eighth, CLI reproducibility,
// is exercised from outside against the built binary). Deterministic for a
// fixed seed.
std::vector<CheckResult> run_check_suites(std::uint64_t seed);

// "[PASS] criterion N (name): detail"
std::string format_check_line(const CheckResult& result);

}  // namespace cohres
