#include "rinv/volume_select.hpp"

#include <cmath>

#include "rinv/error.hpp"
#include "rinv/matlin.hpp"

namespace rinv {

namespace {

// Floating slack on ratio comparisons, so exact ties are not read as swaps.
constexpr double kTieSlack = 1e-12;

IndexSet greedy_seed(const Matrix& a, int r, const Vec& d) {
  const int m = a.cols();
  Mat resid = a.dense() * d.cwiseInverse().asDiagonal();
  const double scale = resid.colwise().norm().maxCoeff();
  std::vector<bool> used(m, false);
  IndexSet tau;
  for (int step = 0; step < r; ++step) {
    int best = -1;
    double best_norm = -1.0;
    for (int i = 0; i < m; ++i) {
      if (used[i]) continue;
      const double nrm = resid.col(i).norm();
      if (nrm > best_norm) {
        best_norm = nrm;
        best = i;
      }
    }
    if (best < 0 || best_norm <= kRankTol * scale) {
      fail(ErrorCode::RankTooSmall, "columns span fewer than r = " + std::to_string(r) + " dimensions");
    }
    used[best] = true;
    tau.push_back(best);
    const Vec q = resid.col(best) / best_norm;
    // Two passes of Gram-Schmidt keep the residuals orthogonal to the span.
    for (int pass = 0; pass < 2; ++pass) resid -= q * (q.transpose() * resid);
  }
  std::sort(tau.begin(), tau.end());
  return tau;
}

}  // namespace

Weights::Weights(Vec d) : d_(std::move(d)) {
  if (d_.size() == 0) fail(ErrorCode::BadParams, "weights must be nonempty");
  for (Eigen::Index i = 0; i < d_.size(); ++i) {
    if (!(d_(i) > 0.0) || !std::isfinite(d_(i))) {
      fail(ErrorCode::BadParams, "weights must be finite and strictly positive");
    }
  }
}

Mat leave_one_out_distances(const Matrix& a, const IndexSet& tau) {
  const int r = static_cast<int>(tau.size());
  const Mat b = a.columns(tau);
  Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  if (r > a.rows() || s.size() < r || s(r - 1) <= kRankTol * s(0)) {
    fail(ErrorCode::RankDeficient, "columns " + to_string(tau) + " are linearly dependent");
  }
  const Mat& u = svd.matrixU();
  const Mat& v = svd.matrixV();
  const Vec inv_s = s.cwiseInverse();
  // Dual vectors w_j = U S^{-1} V^T e_j span(tau) = span(tau \ j) (+) span(w_j).
  const Mat w = u * inv_s.asDiagonal() * v.transpose();
  const Vec w_sq = v.array().square().matrix() * inv_s.array().square().matrix();
  // Residuals are projected explicitly; |a|^2 - |U^T a|^2 cancels badly for columns near span(tau).
  const Vec resid_sq = (a.dense() - u * (u.transpose() * a.dense())).colwise().squaredNorm().transpose();
  const Mat inner = w.transpose() * a.dense();  // r x m
  Mat out(r, a.cols());
  for (int j = 0; j < r; ++j) {
    for (int i = 0; i < a.cols(); ++i) {
      out(j, i) = std::sqrt(resid_sq(i) + inner(j, i) * inner(j, i) / w_sq(j));
    }
  }
  return out;
}

double weighted_log_volume(const Matrix& a, const IndexSet& tau, const Weights& d) {
  Mat c = a.columns(tau);
  for (std::size_t k = 0; k < tau.size(); ++k) c.col(k) /= d[tau[k]];
  return singular_values(c).array().log().sum();
}

ExchangeState volume_exchange_select(const Matrix& a, int r, const Weights& weights,
                                     const VolumeOptions& opts) {
  const int m = a.cols();
  if (weights.size() != m) fail(ErrorCode::BadParams, "weights length must equal column count");
  if (r < 1) fail(ErrorCode::BadParams, "r must be >= 1");
  if (r > numerical_rank(a)) {
    fail(ErrorCode::RankTooSmall, "r = " + std::to_string(r) + " exceeds rank(A)");
  }
  const Vec d = weights.values() / weights.values().maxCoeff();
  const Weights scaled(d);

  ExchangeState st;
  st.delta = opts.delta;
  st.tau = opts.initial ? make_index_set(*opts.initial, m) : greedy_seed(a, r, d);
  if (static_cast<int>(st.tau.size()) != r) fail(ErrorCode::BadParams, "initial set must have r elements");
  st.log_vol = weighted_log_volume(a, st.tau, scaled);
  st.log_vol_initial = st.log_vol;
  if (!std::isfinite(st.log_vol)) fail(ErrorCode::RankDeficient, "initial set is degenerate");

  while (st.swaps < opts.max_swaps) {
    const Mat dist = leave_one_out_distances(a, st.tau);
    double best_gain = 1.0 + opts.delta;
    int best_j = -1;
    int best_i = -1;
    for (int jp = 0; jp < r; ++jp) {
      const double own = dist(jp, st.tau[jp]) / d(st.tau[jp]);
      for (int i = 0; i < m; ++i) {
        if (contains(st.tau, i)) continue;
        const double gain = (dist(jp, i) / d(i)) / own;
        if (gain > best_gain * (1.0 + kTieSlack)) {
          best_gain = gain;
          best_j = jp;
          best_i = i;
        }
      }
    }
    if (best_j < 0) break;
    st.tau[best_j] = best_i;
    std::sort(st.tau.begin(), st.tau.end());
    st.log_vol += std::log(best_gain);
    ++st.swaps;
  }
  return st;
}

bool verify_local_max(const Matrix& a, const IndexSet& tau, const Weights& d, double delta) {
  if (d.size() != a.cols()) fail(ErrorCode::BadParams, "weights length must equal column count");
  const Mat dist = leave_one_out_distances(a, tau);
  for (std::size_t jp = 0; jp < tau.size(); ++jp) {
    const double own = dist(jp, tau[jp]) / d[tau[jp]];
    double best = 0.0;
    for (int i = 0; i < a.cols(); ++i) best = std::max(best, dist(jp, i) / d[i]);
    if (own * (1.0 + delta) * (1.0 + kTieSlack) < best) return false;
  }
  return true;
}

}  // namespace rinv
