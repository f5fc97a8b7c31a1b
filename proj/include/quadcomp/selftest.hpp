#pragma once

// Quick property suites behind the `selftest` subcommand.

#include <cstdint>
#include <string>
#include <vector>

namespace quadcomp {

struct SelftestItem {
  std::string name;
  bool ok = true;
  std::string detail;
  double seconds = 0;
};

std::vector<SelftestItem> run_selftest(std::uint64_t seed = 1);

}  // namespace quadcomp
