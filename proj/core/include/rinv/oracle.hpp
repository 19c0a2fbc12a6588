#pragma once

#include <cstdint>

#include "rinv/matlin.hpp"

namespace rinv {

enum class Objective { Smin, Volume };

std::string_view to_string(Objective o);

struct OracleOptions {
  std::uint64_t max_subsets = 5'000'000;
  int threads = 0;  // 0: hardware concurrency
};

/// Exhaustive optimum over all |sigma| = k. best_value is s_min(A J_sigma)
/// for Smin and det((A J_sigma)^T A J_sigma) for Volume; ties go to the
/// lexicographically smallest sigma.
struct OracleResult {
  IndexSet best_sigma;
  double best_value = 0.0;
  std::uint64_t evaluated = 0;
  Objective objective = Objective::Smin;
  SubsetSelection certificate;  // restrict_certificate of best_sigma
};

std::uint64_t binomial(int n, int k);

/// Throws TooManySubsets when C(m, k) exceeds max_subsets.
OracleResult best_subset(const Matrix& a, int k, Objective objective, const OracleOptions& opts = {});

}  // namespace rinv
