#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json_writer.hpp"
#include "rinv/matlin.hpp"
#include "rinv/shattering.hpp"

namespace rinv::cli {

struct VerifyConfig {
  int max_m = 10;
  int instances = 10;  // random instances per invariant
  std::uint64_t seed = 1;
  int sauer_cap = kDefaultSauerCap;
  int exact_cap = kDefaultExactCap;
  bool inject_fault = false;  // flips the sign of one side of the trace identity
};

struct InvariantResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  std::string first_failure;
  bool passed() const { return checks > 0 && failures == 0; }
};

struct VerifyReport {
  std::vector<InvariantResult> invariants;
  bool passed() const;
  std::vector<std::string> failing() const;
};

VerifyReport run_verify(const VerifyConfig& cfg);

Json verify_json(const VerifyReport& r, const VerifyConfig& cfg);

}  // namespace rinv::cli
