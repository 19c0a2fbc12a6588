#pragma once

#include <optional>

#include "rinv/matrix.hpp"

namespace rinv {

/// Strictly positive column weights d_1..d_m.
class Weights {
 public:
  explicit Weights(Vec d);
  static Weights uniform(int m) { return Weights(Vec::Ones(m)); }

  const Vec& values() const { return d_; }
  int size() const { return static_cast<int>(d_.size()); }
  double operator[](int j) const { return d_(j); }

 private:
  Vec d_;
};

struct VolumeOptions {
  double delta = 1e-6;                // accept a swap only if it gains > (1 + delta)
  std::optional<IndexSet> initial;    // start here instead of the greedy seed
  int max_swaps = 1'000'000;
};

/// Result of the exchange search over K_tau = conv{+-A e_j / d_j : j in tau}.
/// log_vol is (1/2) log det(C^T C) for C = A J_tau diag(1/d_tau), which is
/// log vol_r(K_tau) up to a constant depending only on r.
struct ExchangeState {
  IndexSet tau;
  double log_vol = 0.0;
  double log_vol_initial = 0.0;
  double delta = 0.0;
  int swaps = 0;
};

/// (1+delta)-approximate local maximiser of vol_r(K_tau) over |tau| = r:
/// greedy seed followed by best-improvement single swaps. Weights are
/// rescaled by their max before use. Throws RankTooSmall if r > rank(A).
ExchangeState volume_exchange_select(const Matrix& a, int r, const Weights& d,
                                     const VolumeOptions& opts = {});

/// True iff for every j in tau
///   ||P_{E_{tau\j}} A e_j|| / d_j >= max_i ||P_{E_{tau\j}} A e_i|| / d_i / (1+delta).
/// Throws RankDeficient when the columns of tau are dependent.
bool verify_local_max(const Matrix& a, const IndexSet& tau, const Weights& d, double delta);

/// ||P_{E_{tau\j}} A e_i|| for every j in tau (rows, in tau order) and
/// every column i (cols). Unweighted.
Mat leave_one_out_distances(const Matrix& a, const IndexSet& tau);

/// (1/2) log det of the Gram matrix of {A e_j / d_j}_{j in tau}, computed
/// from scratch.
double weighted_log_volume(const Matrix& a, const IndexSet& tau, const Weights& d);

}  // namespace rinv
