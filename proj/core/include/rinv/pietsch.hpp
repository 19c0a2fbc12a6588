#pragma once

#include <cstdint>

#include "rinv/matrix.hpp"

namespace rinv {

struct PietschOptions {
  int max_iters = 50'000;
  double tol = 1e-9;      // relative duality gap at which iteration stops
  std::uint64_t seed = 0x5eed;
};

/// Probability weights mu on the rows t_i of T (m x n) with
///   ||T^T y||^2 <= achieved_M^2 * sum_i mu_i y_i^2   for all y.
/// achieved_M is evaluated exactly for the returned mu; rows with mu_i = 0
/// are zero rows of T.
struct PietschMeasure {
  Vec mu;
  double achieved_M = 0.0;
  double lower_bound = 0.0;  // sqrt of the dual objective; optimum lies in [lower_bound, achieved_M]
  int iterations = 0;
};

/// Minimises the domination constant over the simplex. Works on the dual
/// problem max <TT^T, X> s.t. diag(X) = 1, X psd, with a low-rank
/// coordinate ascent, and reads mu off the optimality conditions.
/// Throws ZeroMatrix for T = 0 and NoConvergence after max_iters sweeps.
PietschMeasure pietsch_measure(const Mat& t, const PietschOptions& opts = {});

/// achieved_M^2 for a given mu: lambda_max(D^{-1/2} T T^T D^{-1/2}) on
/// supp(mu), or infinity if a nonzero row has mu_i = 0.
double domination_constant_sq(const Mat& t, const Vec& mu);

/// sigma = {i : mu_i <= 1/(m eps)}, so |sigma| >= (1-eps) m and
/// ||P_sigma T|| <= achieved_M / sqrt(eps m).
IndexSet grothendieck_pietsch_subset(const Mat& t, double eps, const PietschOptions& opts = {});
IndexSet grothendieck_pietsch_subset(const PietschMeasure& measure, double eps);

}  // namespace rinv
