#pragma once

// Invariant suites run by `fordsph verify`. Each check works at a fixed desk
// scale and reports what it measured.

#include <cstdint>
#include <string>
#include <vector>

namespace fordsph {

struct CheckResult {
  std::string suite;
  std::string name;
  std::string anchor;  // the statement being checked
  bool passed = false;
  std::string detail;
};

// arith, farey, region, moment.
const std::vector<std::string>& verify_suites();

// suite is one of verify_suites() or "all". InputError on other names.
std::vector<CheckResult> run_verify(const std::string& suite, std::uint64_t seed, unsigned threads);

}  // namespace fordsph
