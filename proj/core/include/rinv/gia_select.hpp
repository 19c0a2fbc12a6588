#pragma once

#include <optional>
#include <vector>

#include "rinv/matlin.hpp"
#include "rinv/pietsch.hpp"
#include "rinv/shattering.hpp"
#include "rinv/volume_select.hpp"

namespace rinv {

struct GiaOptions {
  int sauer_cap = kDefaultSauerCap;
  PietschOptions pietsch;
};

/// One Sauer-Shelah round of the induction: coordinates D = s \ tau, the
/// size of Omega (an exact integer), and the shattered subset beta merged
/// into tau.
struct InductionLevel {
  IndexSet free_coords;
  std::uint64_t omega_size = 0;
  IndexSet beta;
};

struct InductionResult {
  IndexSet tau;
  double M = 0.0;  // max_j 1 / ||P_{F_j} A e_j|| over all columns
  std::vector<InductionLevel> levels;
};

/// tau subset of s with |tau| >= (1 - 2^-k_levels)|s| such that for all
/// theta containing tau and all a,
///   sum_{tau}|a_i| <= alpha_k M sqrt|s| ||sum_theta a_i A e_i|| + (2^k - 1) sum_{theta cap (s\tau)} |a_i|,
/// alpha_k = sum_{r<=k} 2^{r/2}. Columns of A must be independent; basis is
/// the dual basis over all columns. Throws DimTooLarge past sauer_cap.
InductionResult induction_subset(const Matrix& a, const IndexSet& s, int k_levels, const DualBasis& basis,
                                 int sauer_cap = kDefaultSauerCap);

/// alpha_k = sum_{r=1}^k 2^{r/2}; alpha_0 = 0.
double alpha(int k);

/// sigma subset tau subset beta with |tau| >= (1-2^-t)|beta|, |tau\sigma| <= |beta|/4 and
/// ||P_sigma (A J_theta)^{-1}|| <= sqrt(2 pi) alpha_t M, theta = tau cup ([m]\beta).
struct CombineResult {
  IndexSet sigma;
  IndexSet tau;
  IndexSet theta;
  int t = 0;
  double eps = 0.0;            // |beta| / (4 |tau|)
  double pietsch_M = 0.0;      // achieved domination constant on P_tau (A J_theta)^{-1}
  double certified_norm = 0.0; // pietsch_M / sqrt(eps |tau|), a bound on ||P_sigma (A J_theta)^{-1}||
  double level_bound = 0.0;    // sqrt(2 pi) alpha_t M
  InductionResult induction;
};

CombineResult combine_subset(const Matrix& a, const IndexSet& beta, int t, const DualBasis& basis,
                             const GiaOptions& opts = {});

/// Rows `rows` of the inverse of A J_theta on its range, in an orthonormal
/// basis of that range: a |rows| x |theta| matrix whose operator norms equal
/// those of P_rows (A J_theta)^{-1}.
Mat restricted_inverse_rows(const Matrix& a, const IndexSet& theta, const IndexSet& rows);

struct GiaLevel {
  int u = 0;
  int t = 0;
  IndexSet sigma;
  IndexSet tau;
  IndexSet beta;       // tau_u \ sigma_u
  IndexSet beta_prev;  // beta_{u-1}
  IndexSet theta;      // tau_u cup ([m] \ beta_{u-1})
  double certified_norm = 0.0;
  double level_bound = 0.0;
};

struct GiaTrace {
  int r = 0;
  double M = 0.0;
  std::vector<GiaLevel> levels;
  IndexSet sigma_untrimmed;
  double C_impl = 0.0;      // universal constant of the implementation
  double C_instance = 0.0;  // constant actually realised by the level bounds
  double certified_bound = 0.0;  // sqrt(sum_u certified_norm_u^2) >= inv_norm before trimming
};

/// The universal constant 8 sqrt(2 pi) / (sqrt 2 - 1).
double gia_constant();

/// Smallest r >= 0 with (m - k) 2^{2r+1} >= m.
int gia_levels(int m, int k);

struct GiaResult {
  SubsetSelection selection;
  GiaTrace trace;
};

/// |sigma| = k with ||(A J_sigma)^{-1}|| <= C_impl sqrt(m/(m-k)) max_j 1/||P_{F_j} A e_j||.
/// Columns of A must be linearly independent and 1 <= k < m.
/// Throws NotFullColumnRank, DimTooLarge.
GiaResult giannopoulos_select(const Matrix& a, int k, const GiaOptions& opts = {});

struct MainTheoremResult {
  SubsetSelection selection;
  int r = 0;
  int r_star = 0;             // minimiser of the rank objective over the admissible range
  IndexSet tau;               // volume step output, |tau| = r
  double bound = 0.0;         // C_impl (1+delta) times the objective at r (weighted if d given)
  GiaTrace trace;
};

struct MainTheoremOptions {
  GiaOptions gia;
  VolumeOptions volume;
  int max_r = kDefaultSauerCap;  // the Giannopoulos step enumerates 2^r sign vectors
  std::optional<int> r;          // run only this r instead of r*-1..r*+1
};

/// Volume step at r followed by giannopoulos_select on A J_tau, for r in
/// {r*-1, r*, r*+1} (or opts.r alone); returns the best certificate. Throws
/// RankTooSmall if rank(A) <= k and BadParams for an r outside (k, min(rank, max_r)].
MainTheoremResult main_theorem_select(const Matrix& a, int k, const std::optional<Weights>& d = std::nullopt,
                                      const MainTheoremOptions& opts = {});

/// Inradius of P_sigma(E), E = {a : ||Y a|| <= 1}: 1/sqrt(lambda_max) of the
/// Schur complement of G_{sigma^c sigma^c} in G = Y^T Y. With lift = true the
/// columns are replaced by y_i + e_{n+i}, so G becomes Y^T Y + I.
/// Throws RankDeficient for dependent columns when lift is false.
double ellipsoid_projection_inradius(const Matrix& y, const IndexSet& sigma, bool lift = false);

}  // namespace rinv
