// Fast property checks run by `hyden check`.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hyden {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<CheckResult> run_self_check(std::uint64_t seed = 1);

}  // namespace hyden
