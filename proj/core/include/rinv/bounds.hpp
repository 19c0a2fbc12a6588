#pragma once

#include <map>
#include <string>
#include <vector>

#include "rinv/matrix.hpp"

namespace rinv {

/// Stable-rank headroom eps = 1 - k / srank.
double headroom(double k, double srank);

/// Spielman-Srivastava: (1/(1 - sqrt(1-eps))) sqrt(m)/||A||_S2 with
/// eps = 1 - k/srank(A). Throws NotApplicable unless k < srank(A).
double ss_bound(const Matrix& a, int k);

/// Schatten-4 bound (1/sqrt(1 - 2 sqrt(1-eps))) sqrt(m)/||A||_S2 with
/// eps = 1 - k/srank_4(A). Throws NotApplicable unless eps > 3/4.
double mss_s4_bound(const Matrix& a, int k);

/// sqrt(m r / ((r-k) sum_{i>=r} s_i^2)) with s 1-indexed, for k < r <= rank.
double rank_objective(const Vec& s, int m, int k, int r);

struct RankBound {
  double value = 0.0;
  int r = 0;
};

/// Exact minimum of rank_objective over r in {k+1..rank}; ties go to the
/// smallest r. Throws NotApplicable unless rank(A) > k.
RankBound rank_bound(const Matrix& a, int k);
RankBound rank_bound(const Vec& s, int m, int rank, int k, int r_max);

/// Piecewise psi_p: inf for eps <= 0; sqrt(c)/eps on (0, 1/2];
/// sqrt(c)/log(1/(1-eps)) on (1/2, 1 - e^{-c}]; 1 above, c = p/(p-2).
double psi_p(double eps, double p);

/// psi_p(1 - k/srank_p(A)) sqrt(m)/||A||_S2; infinite when k >= srank_p.
double schatten_psi_bound(const Matrix& a, int k, double p);

/// gamma = rank (sqrt(rank) - sqrt(k))^2 / sum_{i<=rank} 1/s_i^2.
double barrier_gamma(const Vec& s, int rank, int k);

/// sqrt(m)/(sqrt(rank) - sqrt(k)) (mean_{i<=rank} 1/s_i^2)^{1/2} = sqrt(m/gamma).
/// Throws NotApplicable unless k < rank(A).
double mss_rank_bound(const Matrix& a, int k);

/// sqrt(m / refined), refined the supremum of the transform objective.
/// Throws NotApplicable unless k < rank(A).
double transform_bound(const Matrix& a, int k);

struct BoundEntry {
  std::string name;
  bool applicable = false;
  double value = 0.0;
  bool needs_constant = false;  // stated up to a universal constant
  std::string reason;           // set when not applicable
  std::map<std::string, double> params;
};

struct BoundReport {
  int k = 0;
  int m = 0;
  int rank = 0;
  double srank = 0.0;
  double srank4 = 0.0;
  double entropic_srank = 0.0;
  std::vector<BoundEntry> entries;
};

/// Every bound for (A, k). Schatten entries are produced for each p in ps.
BoundReport bound_report(const Matrix& a, int k, const std::vector<double>& ps = {3.0, 4.0, 6.0});

}  // namespace rinv
