#pragma once

#include <limits>
#include <string_view>

#include "rinv/matrix.hpp"

namespace rinv {

inline constexpr double kRankTol = 1e-10;
inline constexpr int kDefaultExactCap = 22;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Count of singular values above rel_tol * s_1; 0 for the zero matrix.
int numerical_rank(const Matrix& a, double rel_tol = kRankTol);
int numerical_rank(const Mat& a, double rel_tol = kRankTol);

/// (sum s_i^p)^(1/p), or s_1 for p = infinity. Requires p >= 1.
double schatten_norm(const Matrix& a, double p);

/// (||A||_S2 / ||A||_Sp)^(2p/(p-2)) for p in (2, inf]; p = inf gives the
/// classical stable rank ||A||_S2^2 / ||A||_S_inf^2.
double stable_rank(const Matrix& a, double p);

/// Limit of stable_rank(A, p) as p -> 2+, evaluated in log space over the
/// singular values above the rank threshold.
double entropic_stable_rank(const Matrix& a);

/// Orthogonal projector onto (span{A e_j : j in tau})^perp.
struct Projector {
  Mat P;
  int rank = 0;  // n - rank(A J_tau)
};

Projector proj_complement(const Matrix& a, const IndexSet& tau, double rel_tol = kRankTol);

/// Biorthogonal dual of {A e_j}_{j in omega} inside their span.
struct DualBasis {
  IndexSet omega;
  Mat vectors;    // n x |omega|; column c is v_{omega[c]}
  Vec leverage;   // leverage(c) = 1 / ||P_{F_j} A e_j||^2 = ||v_j||^2

  /// max_j leverage_j^(1/2) = max_j 1 / ||P_{F_j} A e_j||.
  double max_inverse_distance() const;
};

/// Throws RankDeficient if {A e_j}_{j in omega} are not linearly independent.
DualBasis dual_basis(const Matrix& a, const IndexSet& omega);

/// max over x in [-1,1]^m of ||T x||_2, by enumeration of sign vectors.
/// Throws TooLarge when cols(T) exceeds exact_cap.
double norm_inf_to_2(const Mat& t, int exact_cap = kDefaultExactCap);

/// ||T||_{l2 -> l1} = ||T^T||_{l_inf -> l2}.
double norm_2_to_1(const Mat& t, int exact_cap = kDefaultExactCap);

enum class Method { Volume, Giannopoulos, RankPipeline, Interlacing, Oracle };

std::string_view to_string(Method m);

/// Certificate for a column subset. inv_norm is infinite when A J_sigma is
/// singular to the rank tolerance, in which case smin is reported as 0.
struct SubsetSelection {
  IndexSet sigma;
  int k = 0;
  double smin = 0.0;
  double inv_norm = kInf;
  Method method = Method::Oracle;
};

SubsetSelection restrict_certificate(const Matrix& a, const IndexSet& sigma,
                                     Method method = Method::Oracle);

/// Checks ||P A||_S2^2 >= sum_{i=n-r+1}^{m} s_i(A)^2 - 1e-8, r = rank(P).
/// Throws NotAProjector when P is not symmetric idempotent.
bool fan_projection_check(const Matrix& a, const Mat& p);

}  // namespace rinv
